// SPDX-License-Identifier: Apache-2.0
//
// subsynth - compressive-sensing subarray synthesis for non-uniform linear arrays
// Copyright (C) 2026 the subsynth contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <string>
#include <vector>

#include "subsynth/run.hpp"

namespace subsynth {

enum class SweepAxis { Sparsity, XiTarget, Q, SllDb };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string &name);

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    std::string status; ///< "ok", "infeasible" or an error tag
    double chi = 0.0;
    double xi = 0.0;
    double sll_db = 0.0;
    double runtime_ms = 0.0;
};

/// One synthesis per value, the axis field overriding the base config.
/// Rows run on up to `jobs` threads; the returned order always matches the
/// input order and per-row failures are recorded in the row.
std::vector<SweepRow> run_sweep(const RunConfig &base, SweepAxis axis,
                                const std::vector<double> &values, int jobs = 1);

/// `value,chi,xi,sll_db,runtime_ms,status` CSV. Failed rows leave the
/// metric fields empty.
std::string sweep_csv(const std::vector<SweepRow> &rows);

} // namespace subsynth
