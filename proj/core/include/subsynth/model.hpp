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

#include <vector>

#include "subsynth/types.hpp"

namespace subsynth {

/// Ordered set of observation angles, in radians, restricted to
/// [-pi/2, pi/2]. Immutable after construction.
class AngleGrid {
  public:
    /// Throws std::invalid_argument unless the angles are strictly
    /// increasing, inside [-pi/2, pi/2] and at least two.
    explicit AngleGrid(std::vector<double> thetas_rad);

    /// Uniform grid of `points` angles spanning [lo_rad, hi_rad].
    static AngleGrid uniform(double lo_rad, double hi_rad, int points);

    /// Uniform grid specified in degrees with a fixed step; the span is
    /// [lo_deg, lo_deg + floor((hi_deg-lo_deg)/step)*step].
    static AngleGrid uniform_deg(double lo_deg, double hi_deg, double step_deg);

    int size() const { return static_cast<int>(thetas_.size()); }
    double operator[](int m) const { return thetas_[static_cast<size_t>(m)]; }
    const std::vector<double> &thetas() const { return thetas_; }

  private:
    std::vector<double> thetas_;
};

/// Element positions of a linear array in wavelengths (lambda == 1
/// internally). Index order equals spatial order; positions are strictly
/// increasing. Immutable after construction.
class ArrayGeometry {
  public:
    /// Throws std::invalid_argument unless positions are strictly
    /// increasing and non-empty.
    explicit ArrayGeometry(std::vector<double> positions);

    /// Centered uniform array: d_i = (i - (N+1)/2) * spacing, i = 1..N.
    /// Requires N >= 2 and spacing > 0.
    static ArrayGeometry uniform(int elements, double spacing);

    int size() const { return static_cast<int>(positions_.size()); }
    double operator[](int i) const { return positions_[static_cast<size_t>(i)]; }
    const std::vector<double> &positions() const { return positions_; }

    /// Smallest gap between adjacent elements (+inf for a single element).
    double min_adjacent_spacing() const;

  private:
    std::vector<double> positions_;
};

/// Complex target field samples on an angle grid.
class DesiredPattern {
  public:
    /// Throws std::invalid_argument if lengths mismatch or the field is
    /// identically zero.
    DesiredPattern(AngleGrid grid, ComplexVector values);

    const AngleGrid &grid() const { return grid_; }
    const ComplexVector &values() const { return values_; }
    int size() const { return grid_.size(); }

  private:
    AngleGrid grid_;
    ComplexVector values_;
};

/// Steering matrix: entry (m, n) = exp(j * 2*pi * d_n * sin(theta_m)).
ComplexMatrix steering_matrix(const ArrayGeometry &geom, const AngleGrid &grid);

/// Cumulative sum w_n = sum_{k<=n} x_k: applies the implicit
/// lower-triangular all-ones basis to a difference vector.
ComplexVector basis_expand(const ComplexVector &x);

/// Adjacent differencing x = [w_1, w_2-w_1, ...]: inverse of basis_expand.
ComplexVector basis_difference(const ComplexVector &w);

/// Dictionary A = Phi * Psi without materializing Psi: column j is the sum
/// of Phi columns j..N (suffix sums, accumulated right to left).
ComplexMatrix basis_dictionary(const ComplexMatrix &phi);

/// Columns of Phi * Psi restricted to a sorted support set (0-based).
ComplexMatrix dictionary_columns(const ComplexMatrix &phi, const std::vector<int> &support);

/// Expands sparse coefficients on a 0-based support (any order) into the
/// full excitation vector w of length n: each coefficient adds from its
/// index rightward, so w_i = sum of coefficients at support indices <= i.
ComplexVector expand_support(const std::vector<int> &support, const ComplexVector &coeffs, int n);

/// Array factor F(theta_m) = sum_n w_n * exp(j * 2*pi * d_n * sin(theta_m)).
ComplexVector evaluate_pattern(const ArrayGeometry &geom, const ComplexVector &weights,
                               const AngleGrid &grid);

} // namespace subsynth
