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
#include <vector>

#include "subsynth/model.hpp"

namespace subsynth {

enum class PatternFamily { Chebyshev, Taylor, File };

std::string to_string(PatternFamily family);
PatternFamily pattern_family_from_string(const std::string &name);

/// Description of a reference pattern: an analytic taper family applied to
/// a uniform half-wavelength array, or an arbitrary field imported from CSV.
struct PatternSpec {
    PatternFamily family = PatternFamily::Chebyshev;
    int elements = 0;    ///< N of the generating array (and of the synthesis array)
    double sll_db = 0.0; ///< sidelobe suppression in dB, positive (e.g. 20 means -20 dB lobes)
    int nbar = 0;        ///< Taylor only: number of near-in constant-level sidelobes
    std::filesystem::path file; ///< File only
};

/// Dolph-Chebyshev weights for an N-element array with equi-ripple sidelobes
/// at -sll_db relative to the main beam. Real, symmetric, scaled to unit
/// maximum. Requires N >= 2 and sll_db > 0.
RealVector chebyshev_excitations(int elements, double sll_db);

/// Taylor nbar line-source taper sampled at the element centers of an
/// N-element array. Real, symmetric, unit maximum. Throws GenerationError
/// when the requested (sll_db, nbar) pair yields a non-monotonic taper
/// (nbar too large for the suppression level).
RealVector taylor_excitations(int elements, double sll_db, int nbar);

/// Builds the desired pattern on the given grid: analytic families are
/// evaluated from a uniform lambda/2 array of `elements` weights; file
/// patterns are loaded and resampled onto the grid.
DesiredPattern make_desired(const PatternSpec &spec, const AngleGrid &grid);

/// Raw contents of a desired-pattern CSV. Angles stay in degrees here so a
/// load/save cycle is byte-stable; conversion to radians happens when a
/// DesiredPattern is built.
struct PatternFile {
    std::vector<double> theta_deg; ///< strictly increasing
    ComplexVector values;
    bool magnitude_only = false; ///< imported from the `theta_deg,mag_db` form (zero phase assumed)
};

/// Parses `theta_deg,re,im` or `theta_deg,mag_db` CSV (header required).
PatternFile load_pattern_file(const std::filesystem::path &path);

/// Writes `theta_deg,re,im` CSV with shortest round-trip number formatting.
void save_pattern_file(const std::filesystem::path &path, const PatternFile &file);

/// Linear interpolation of the tabulated field onto a grid; every requested
/// angle must lie inside the tabulated span.
DesiredPattern resample(const PatternFile &file, const AngleGrid &grid);

} // namespace subsynth
