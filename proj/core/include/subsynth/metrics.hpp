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

#include "subsynth/model.hpp"
#include "subsynth/solver_omp.hpp"

namespace subsynth {

struct MetricsReport {
    double xi = 0.0;                ///< normalized pattern-matching error
    double chi = 0.0;               ///< subarray rate K/N
    double sll_db = 0.0;            ///< peak sidelobe relative to main beam, dB
    double mainlobe_peak_deg = 0.0; ///< scan angle of the main-beam peak
};

/// One contiguous group of elements sharing one excitation. Indices are
/// 0-based and inclusive.
struct SubarrayRun {
    int first = 0;
    int last = 0;
    Complex weight;

    int size() const { return last - first + 1; }
};

/// Partition of the elements 0..N-1 into maximal equal-weight runs.
struct SubarrayLayout {
    std::vector<SubarrayRun> runs;

    int count() const { return static_cast<int>(runs.size()); }
};

/// Normalized pattern-matching error on a dense metric grid covering
/// [0, pi/2]: integral of |desired - achieved|^2 over the integral of
/// |desired|^2 (trapezoidal rule on the grid). With
/// `achieved_denominator` the denominator integrates |achieved|^2 instead,
/// which is unstable as achieved -> 0 (returns +inf at zero energy).
double xi_metric(const DesiredPattern &desired, const ComplexVector &achieved,
                 bool achieved_denominator = false);

/// Subarray rate chi = K/N; requires 1 <= K <= N.
double chi_metric(int subarrays, int elements);

struct SllResult {
    double sll_db = 0.0;
    double mainlobe_peak_deg = 0.0;
};

/// Peak sidelobe level from a dense |F| scan of [-90 deg, 90 deg]. The main
/// lobe is the connected region around the global peak bounded by the first
/// local minima; the scan mirrors at the boundaries (sin is symmetric about
/// +-90 deg), so a descent that reaches a boundary ends the lobe there.
/// Returns -inf when no sidelobe exists (single element). Requires a
/// nonzero excitation vector.
SllResult measure_sll(const ArrayGeometry &geom, const ComplexVector &weights,
                      double scan_step_deg = 0.01);

/// Expands the sparse solution to the excitation vector and groups maximal
/// runs of equal consecutive weights (relative merge tolerance).
SubarrayLayout extract_layout(const SparseSolution &solution, int elements,
                              double merge_tol = 1e-9);

} // namespace subsynth
