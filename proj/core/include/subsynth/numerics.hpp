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

/// Pivot magnitudes below rank_tol * (largest pivot) count as zero when
/// deciding rank.
inline constexpr double lstsq_rank_tol = 1e-10;

/// Minimum-residual solution of the overdetermined complex system A f ~= b,
/// computed by column-pivoted Householder QR (never normal equations).
/// Requires rows >= cols; throws RankDeficientError when the factorization
/// detects rank < cols.
ComplexVector lstsq_complex(const ComplexMatrix &a, const ComplexVector &b);

/// Best REAL vector eta minimizing ||b - A eta||_2 for complex A, b: the
/// real and imaginary parts are stacked into a 2M x P real least-squares
/// problem and solved by column-pivoted QR.
RealVector lstsq_real_constrained(const ComplexMatrix &a, const ComplexVector &b);

/// Composite trapezoidal rule over ordered abscissae. Requires at least two
/// samples and matching lengths.
double trapezoid(const std::vector<double> &abscissae, const RealVector &values);

} // namespace subsynth
