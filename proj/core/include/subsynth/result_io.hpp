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

#include <filesystem>
#include <string>

#include "subsynth/run.hpp"

namespace subsynth {

/// Deterministic JSON document for a synthesis result (config echo,
/// geometry, excitations, layout, metrics, traces). Element indices are
/// 1-based in the document. Contains no volatile data, so identical runs
/// serialize byte-identically.
std::string serialize_result(const SynthesisResult &result, const RunConfig &config);

struct LoadedResult {
    SynthesisResult result;
    RunConfig config;
};

/// Inverse of serialize_result. Throws IoError on schema violations.
LoadedResult parse_result(const std::string &json_text);

/// Writes result.json, achieved_pattern.csv (metric grid) and meta.json
/// (runtime and timestamp; kept out of result.json so it stays
/// reproducible) into the directory, creating it if needed.
void save_result(const std::filesystem::path &directory, const SynthesisResult &result,
                 const RunConfig &config, double runtime_ms);

/// Reads a result.json written by save_result.
LoadedResult load_result(const std::filesystem::path &result_json);

} // namespace subsynth
