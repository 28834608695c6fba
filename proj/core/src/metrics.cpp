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

#include "subsynth/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "subsynth/numerics.hpp"

namespace subsynth {

double xi_metric(const DesiredPattern &desired, const ComplexVector &achieved,
                 bool achieved_denominator) {
    if (achieved.size() != desired.size())
        throw std::invalid_argument("xi_metric: pattern sizes differ");
    const auto &thetas = desired.grid().thetas();
    if (thetas.front() < -1e-12)
        throw std::invalid_argument("xi_metric: metric grid must start at 0");

    const RealVector err2 = (desired.values() - achieved).cwiseAbs2();
    const RealVector ref2 =
        achieved_denominator ? achieved.cwiseAbs2() : desired.values().cwiseAbs2();
    const double numerator = trapezoid(thetas, err2);
    const double denominator = trapezoid(thetas, ref2);
    if (denominator <= 0.0) {
        if (achieved_denominator)
            return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("xi_metric: desired pattern has zero energy on the grid");
    }
    return numerator / denominator;
}

double chi_metric(int subarrays, int elements) {
    if (elements < 1 || subarrays < 1 || subarrays > elements)
        throw std::invalid_argument("chi_metric: need 1 <= K <= N");
    return static_cast<double>(subarrays) / static_cast<double>(elements);
}

SllResult measure_sll(const ArrayGeometry &geom, const ComplexVector &weights,
                      double scan_step_deg) {
    if (!(scan_step_deg > 0.0))
        throw std::invalid_argument("measure_sll: scan step must be positive");
    if (weights.size() != geom.size())
        throw std::invalid_argument("measure_sll: weight count must match the geometry");
    if (weights.norm() == 0.0)
        throw std::invalid_argument("measure_sll: excitation vector is zero");

    const AngleGrid scan = AngleGrid::uniform_deg(-90.0, 90.0, scan_step_deg);
    const RealVector mag = evaluate_pattern(geom, weights, scan).cwiseAbs();
    const int count = scan.size();

    int peak = 0;
    for (int i = 1; i < count; ++i)
        if (mag[i] > mag[peak])
            peak = i;

    // Walk down from the peak to the first local minimum on each side. The
    // physical pattern mirrors at +-90 deg, so hitting a boundary while
    // still descending means the lobe ends there and that side has no
    // sidelobe region.
    int left_null = -1;
    for (int i = peak; i > 0; --i) {
        if (mag[i - 1] > mag[i]) {
            left_null = i;
            break;
        }
    }
    int right_null = -1;
    for (int i = peak; i + 1 < count; ++i) {
        if (mag[i + 1] > mag[i]) {
            right_null = i;
            break;
        }
    }

    double side = -1.0;
    if (left_null >= 0)
        for (int i = 0; i <= left_null; ++i)
            side = std::max(side, mag[i]);
    if (right_null >= 0)
        for (int i = right_null; i < count; ++i)
            side = std::max(side, mag[i]);

    SllResult result;
    result.mainlobe_peak_deg = rad2deg(scan[peak]);
    if (side <= 0.0)
        result.sll_db = -std::numeric_limits<double>::infinity();
    else
        result.sll_db = 20.0 * std::log10(side / mag[peak]);
    return result;
}

SubarrayLayout extract_layout(const SparseSolution &solution, int elements, double merge_tol) {
    if (elements < 1)
        throw std::invalid_argument("extract_layout: need at least one element");
    const ComplexVector w = expand_support(solution.support, solution.coeffs, elements);

    SubarrayLayout layout;
    int start = 0;
    for (int i = 1; i < elements; ++i) {
        const double delta = std::abs(w[i] - w[i - 1]);
        const double scale = std::max(std::abs(w[i]), std::abs(w[i - 1]));
        if (delta > merge_tol * scale) {
            layout.runs.push_back({start, i - 1, w[start]});
            start = i;
        }
    }
    layout.runs.push_back({start, elements - 1, w[start]});
    return layout;
}

} // namespace subsynth
