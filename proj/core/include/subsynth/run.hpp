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

#include "subsynth/patterns.hpp"
#include "subsynth/solver_ogomp.hpp"

namespace subsynth {

enum class SolverKind { Omp, Ogomp };

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string &name);

/// Full description of one synthesis run. Everything is explicit; there is
/// no hidden state, so identical configs give identical results.
struct RunConfig {
    PatternSpec pattern;
    SolverKind solver = SolverKind::Ogomp;
    int mode = 1;            ///< 1 = fixed subarray count, 2 = error threshold
    int sparsity = 0;        ///< K, mode 1
    double xi_target = 0.0;  ///< mode 2, normalized-error form
    double epsilon = 0.0;    ///< mode 2, raw residual form
    bool use_raw_epsilon = false;
    RefinementConfig refine;
    int solver_grid_points = 0;   ///< 0 selects the default 4N+1
    double metric_step_deg = 0.05;
    double element_spacing = 0.5; ///< initial uniform spacing, wavelengths
    double sll_scan_step_deg = 0.01;
    bool normalize_columns = false;
    bool carry_geometry = false; ///< mode-2: keep refined positions across h
    /// Umbrella for the literal algorithm variants: achieved-pattern xi
    /// denominator, unrestricted greedy re-selection, undamped eta steps.
    bool paper_literal = false;
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const RunConfig &config);

/// Number of solver-grid points actually used (default 4N+1).
int effective_solver_grid_points(const RunConfig &config);

/// Builds grids, desired patterns and the initial geometry for a config.
SynthesisProblem build_problem(const RunConfig &config);

/// Validates, builds the problem, dispatches on solver/mode and fills in the
/// measured sidelobe metrics. Throws InfeasibleError for unmet mode-2
/// targets (best attempt attached).
SynthesisResult run_synthesis(const RunConfig &config);

/// Re-measures xi / SLL / main-lobe direction from a geometry + excitation
/// pair under the given config's grids.
MetricsReport measure_result_metrics(const RunConfig &config, const ArrayGeometry &geom,
                                     const ComplexVector &excitations, int subarrays);

} // namespace subsynth
