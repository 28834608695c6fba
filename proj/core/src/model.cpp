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

#include "subsynth/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subsynth {

namespace {

// Bound checks tolerate a few ulp so that deg->rad conversion of exactly
// +-90 degrees cannot be rejected.
constexpr double angle_bound_slack = 1e-12;

} // namespace

AngleGrid::AngleGrid(std::vector<double> thetas_rad) : thetas_(std::move(thetas_rad)) {
    if (thetas_.size() < 2)
        throw std::invalid_argument("AngleGrid: need at least two angles");
    const double lo = -pi / 2 - angle_bound_slack;
    const double hi = pi / 2 + angle_bound_slack;
    for (size_t m = 0; m < thetas_.size(); ++m) {
        if (!std::isfinite(thetas_[m]) || thetas_[m] < lo || thetas_[m] > hi)
            throw std::invalid_argument("AngleGrid: angle outside [-pi/2, pi/2]");
        if (m > 0 && thetas_[m] <= thetas_[m - 1])
            throw std::invalid_argument("AngleGrid: angles must be strictly increasing");
    }
}

AngleGrid AngleGrid::uniform(double lo_rad, double hi_rad, int points) {
    if (points < 2)
        throw std::invalid_argument("AngleGrid::uniform: need at least two points");
    if (!(hi_rad > lo_rad))
        throw std::invalid_argument("AngleGrid::uniform: empty span");
    std::vector<double> thetas(static_cast<size_t>(points));
    for (int m = 0; m < points; ++m)
        thetas[static_cast<size_t>(m)] =
            lo_rad + (hi_rad - lo_rad) * static_cast<double>(m) / (points - 1);
    thetas.back() = hi_rad; // guard against accumulation drift at the top end
    return AngleGrid(std::move(thetas));
}

AngleGrid AngleGrid::uniform_deg(double lo_deg, double hi_deg, double step_deg) {
    if (!(step_deg > 0.0))
        throw std::invalid_argument("AngleGrid::uniform_deg: step must be positive");
    if (!(hi_deg > lo_deg))
        throw std::invalid_argument("AngleGrid::uniform_deg: empty span");
    const int count = static_cast<int>(std::floor((hi_deg - lo_deg) / step_deg + 0.5)) + 1;
    std::vector<double> thetas;
    thetas.reserve(static_cast<size_t>(count));
    for (int m = 0; m < count; ++m) {
        const double deg = lo_deg + step_deg * m;
        if (deg > hi_deg + step_deg * 1e-9)
            break;
        thetas.push_back(deg2rad(deg));
    }
    return AngleGrid(std::move(thetas));
}

ArrayGeometry::ArrayGeometry(std::vector<double> positions) : positions_(std::move(positions)) {
    if (positions_.empty())
        throw std::invalid_argument("ArrayGeometry: no elements");
    for (size_t i = 0; i < positions_.size(); ++i) {
        if (!std::isfinite(positions_[i]))
            throw std::invalid_argument("ArrayGeometry: non-finite position");
        if (i > 0 && positions_[i] <= positions_[i - 1])
            throw std::invalid_argument("ArrayGeometry: positions must be strictly increasing");
    }
}

ArrayGeometry ArrayGeometry::uniform(int elements, double spacing) {
    if (elements < 2)
        throw std::invalid_argument("ArrayGeometry::uniform: need at least two elements");
    if (!(spacing > 0.0))
        throw std::invalid_argument("ArrayGeometry::uniform: spacing must be positive");
    std::vector<double> positions(static_cast<size_t>(elements));
    const double center = 0.5 * (elements + 1);
    for (int i = 1; i <= elements; ++i)
        positions[static_cast<size_t>(i - 1)] = (i - center) * spacing;
    return ArrayGeometry(std::move(positions));
}

double ArrayGeometry::min_adjacent_spacing() const {
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < positions_.size(); ++i)
        gap = std::min(gap, positions_[i] - positions_[i - 1]);
    return gap;
}

DesiredPattern::DesiredPattern(AngleGrid grid, ComplexVector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("DesiredPattern: value count must match the grid");
    if (values_.norm() == 0.0)
        throw std::invalid_argument("DesiredPattern: field is identically zero");
}

ComplexMatrix steering_matrix(const ArrayGeometry &geom, const AngleGrid &grid) {
    const int m_count = grid.size();
    const int n_count = geom.size();
    ComplexMatrix phi(m_count, n_count);
    for (int m = 0; m < m_count; ++m) {
        const double s = std::sin(grid[m]);
        for (int n = 0; n < n_count; ++n)
            phi(m, n) = std::polar(1.0, 2.0 * pi * geom[n] * s);
    }
    return phi;
}

ComplexVector basis_expand(const ComplexVector &x) {
    ComplexVector w(x.size());
    Complex acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        acc += x[i];
        w[i] = acc;
    }
    return w;
}

ComplexVector basis_difference(const ComplexVector &w) {
    ComplexVector x(w.size());
    for (Eigen::Index i = w.size() - 1; i > 0; --i)
        x[i] = w[i] - w[i - 1];
    if (w.size() > 0)
        x[0] = w[0];
    return x;
}

ComplexMatrix basis_dictionary(const ComplexMatrix &phi) {
    ComplexMatrix a(phi.rows(), phi.cols());
    if (phi.cols() == 0)
        return a;
    a.col(phi.cols() - 1) = phi.col(phi.cols() - 1);
    for (Eigen::Index j = phi.cols() - 2; j >= 0; --j)
        a.col(j) = a.col(j + 1) + phi.col(j);
    return a;
}

ComplexMatrix dictionary_columns(const ComplexMatrix &phi, const std::vector<int> &support) {
    for (size_t k = 0; k < support.size(); ++k) {
        if (support[k] < 0 || support[k] >= phi.cols())
            throw std::invalid_argument("dictionary_columns: support index out of range");
        if (k > 0 && support[k] <= support[k - 1])
            throw std::invalid_argument("dictionary_columns: support must be sorted and distinct");
    }
    ComplexMatrix b(phi.rows(), static_cast<Eigen::Index>(support.size()));
    ComplexVector acc = ComplexVector::Zero(phi.rows());
    int k = static_cast<int>(support.size()) - 1;
    for (Eigen::Index j = phi.cols() - 1; j >= 0 && k >= 0; --j) {
        acc += phi.col(j);
        if (support[static_cast<size_t>(k)] == j)
            b.col(k--) = acc;
    }
    return b;
}

ComplexVector expand_support(const std::vector<int> &support, const ComplexVector &coeffs, int n) {
    if (static_cast<Eigen::Index>(support.size()) != coeffs.size())
        throw std::invalid_argument("expand_support: support/coefficient size mismatch");
    ComplexVector w = ComplexVector::Zero(n);
    for (size_t k = 0; k < support.size(); ++k) {
        const int i = support[k];
        if (i < 0 || i >= n)
            throw std::invalid_argument("expand_support: support index out of range");
        w.tail(n - i).array() += coeffs[static_cast<Eigen::Index>(k)];
    }
    return w;
}

ComplexVector evaluate_pattern(const ArrayGeometry &geom, const ComplexVector &weights,
                               const AngleGrid &grid) {
    if (weights.size() != geom.size())
        throw std::invalid_argument("evaluate_pattern: weight count must match the geometry");
    const int m_count = grid.size();
    ComplexVector f(m_count);
    for (int m = 0; m < m_count; ++m) {
        const double s = std::sin(grid[m]);
        Complex acc(0.0, 0.0);
        for (int n = 0; n < geom.size(); ++n)
            acc += weights[n] * std::polar(1.0, 2.0 * pi * geom[n] * s);
        f[m] = acc;
    }
    return f;
}

} // namespace subsynth
