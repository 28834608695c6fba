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

#include "subsynth/numerics.hpp"

#include <stdexcept>

#include "subsynth/errors.hpp"

namespace subsynth {

ComplexVector lstsq_complex(const ComplexMatrix &a, const ComplexVector &b) {
    if (a.rows() < a.cols())
        throw std::invalid_argument("lstsq_complex: underdetermined system");
    if (a.rows() != b.size())
        throw std::invalid_argument("lstsq_complex: right-hand side size mismatch");
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr;
    qr.setThreshold(lstsq_rank_tol);
    qr.compute(a);
    if (qr.rank() < a.cols())
        throw RankDeficientError("lstsq_complex: rank-deficient system", qr.rank(), a.cols());
    return qr.solve(b);
}

RealVector lstsq_real_constrained(const ComplexMatrix &a, const ComplexVector &b) {
    if (a.rows() != b.size())
        throw std::invalid_argument("lstsq_real_constrained: right-hand side size mismatch");
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument("lstsq_real_constrained: empty system");
    RealMatrix stacked(2 * a.rows(), a.cols());
    stacked.topRows(a.rows()) = a.real();
    stacked.bottomRows(a.rows()) = a.imag();
    RealVector rhs(2 * b.size());
    rhs.head(b.size()) = b.real();
    rhs.tail(b.size()) = b.imag();
    Eigen::ColPivHouseholderQR<RealMatrix> qr;
    qr.setThreshold(lstsq_rank_tol);
    qr.compute(stacked);
    if (qr.rank() < stacked.cols())
        throw RankDeficientError("lstsq_real_constrained: rank-deficient system", qr.rank(),
                                 stacked.cols());
    return qr.solve(rhs);
}

double trapezoid(const std::vector<double> &abscissae, const RealVector &values) {
    if (abscissae.size() < 2)
        throw std::invalid_argument("trapezoid: need at least two samples");
    if (static_cast<Eigen::Index>(abscissae.size()) != values.size())
        throw std::invalid_argument("trapezoid: abscissa/value size mismatch");
    double sum = 0.0;
    for (size_t i = 1; i < abscissae.size(); ++i) {
        const Eigen::Index j = static_cast<Eigen::Index>(i);
        sum += 0.5 * (abscissae[i] - abscissae[i - 1]) * (values[j] + values[j - 1]);
    }
    return sum;
}

} // namespace subsynth
