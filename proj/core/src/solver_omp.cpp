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

#include "subsynth/solver_omp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "subsynth/numerics.hpp"

namespace subsynth {

namespace {

struct StopRule {
    enum class Kind { Sparsity, ResidualNorm, Xi } kind = Kind::Sparsity;
    int sparsity = 0;
    double threshold = 0.0;
};

// Sorted copy of (support, coeffs); expansion and reporting always use this
// canonical order so identical solutions are bit-identical regardless of
// selection order.
SparseSolution canonical_solution(const std::vector<int> &support, const ComplexVector &coeffs,
                                  double residual_norm) {
    std::vector<size_t> perm(support.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::sort(perm.begin(), perm.end(),
              [&support](size_t a, size_t b) { return support[a] < support[b]; });
    SparseSolution sol;
    sol.support.resize(support.size());
    sol.coeffs.resize(static_cast<Eigen::Index>(support.size()));
    for (size_t k = 0; k < perm.size(); ++k) {
        sol.support[k] = support[perm[k]];
        sol.coeffs[static_cast<Eigen::Index>(k)] = coeffs[static_cast<Eigen::Index>(perm[k])];
    }
    sol.residual_norm = residual_norm;
    return sol;
}

OmpResult omp_run(const ComplexMatrix &dictionary, const ComplexVector &desired,
                  const StopRule &stop, const XiEvaluator &xi_eval, const OmpOptions &options) {
    const Eigen::Index m = dictionary.rows();
    const Eigen::Index n = dictionary.cols();
    if (m < 1 || n < 1)
        throw std::invalid_argument("omp: empty dictionary");
    if (desired.size() != m)
        throw std::invalid_argument("omp: desired pattern size mismatch");
    if (stop.kind == StopRule::Kind::Sparsity && (stop.sparsity < 1 || stop.sparsity > n))
        throw std::invalid_argument("omp: sparsity out of range");
    if (stop.kind != StopRule::Kind::Sparsity && !(stop.threshold > 0.0))
        throw std::invalid_argument("omp: threshold must be positive");
    if (stop.kind == StopRule::Kind::Xi && !xi_eval)
        throw std::invalid_argument("omp: xi stop rule needs an evaluator");

    RealVector inv_norms;
    if (options.normalize_columns) {
        inv_norms = dictionary.colwise().norm();
        for (Eigen::Index j = 0; j < n; ++j)
            inv_norms[j] = inv_norms[j] > 0.0 ? 1.0 / inv_norms[j] : 0.0;
    }

    ComplexVector residual = desired;
    std::vector<int> support;
    std::vector<char> used(static_cast<size_t>(n), 0);
    ComplexMatrix selected(m, 0);
    ComplexVector coeffs;
    OmpTrace trace;
    int iterations = 0;
    // Re-selection (when allowed) can spin without progress; bound the
    // threshold modes at a generous multiple of the column count.
    const int max_iterations =
        stop.kind == StopRule::Kind::Sparsity ? stop.sparsity : static_cast<int>(4 * n);

    while (true) {
        const ComplexVector z = dictionary.adjoint() * residual;
        double best = -1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (options.exclude_selected && used[static_cast<size_t>(j)])
                continue;
            const double mag =
                options.normalize_columns ? std::abs(z[j]) * inv_norms[j] : std::abs(z[j]);
            if (mag > best)
                best = mag;
        }
        int chosen = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (options.exclude_selected && used[static_cast<size_t>(j)])
                continue;
            const double mag =
                options.normalize_columns ? std::abs(z[j]) * inv_norms[j] : std::abs(z[j]);
            if (mag >= best * (1.0 - options.tie_tol)) {
                chosen = static_cast<int>(j);
                break;
            }
        }
        if (chosen < 0)
            throw SolverError("omp: no selectable column remains");

        if (!used[static_cast<size_t>(chosen)]) {
            used[static_cast<size_t>(chosen)] = 1;
            support.push_back(chosen);
            selected.conservativeResize(Eigen::NoChange, selected.cols() + 1);
            selected.col(selected.cols() - 1) = dictionary.col(chosen);
        }
        coeffs = lstsq_complex(selected, desired);
        residual = desired - selected * coeffs;
        const double residual_norm = residual.norm();
        trace.iterations.push_back({chosen, residual_norm});
        ++iterations;

        bool done = false;
        switch (stop.kind) {
        case StopRule::Kind::Sparsity:
            done = iterations >= stop.sparsity;
            break;
        case StopRule::Kind::ResidualNorm:
            done = residual_norm <= stop.threshold;
            break;
        case StopRule::Kind::Xi: {
            const SparseSolution sorted = canonical_solution(support, coeffs, residual_norm);
            const ComplexVector w = expand_support(sorted.support, sorted.coeffs,
                                                   static_cast<int>(n));
            done = xi_eval(w) <= stop.threshold;
            break;
        }
        }
        if (done)
            break;

        if (stop.kind != StopRule::Kind::Sparsity) {
            const bool exhausted = options.exclude_selected
                                       ? static_cast<Eigen::Index>(support.size()) == n
                                       : iterations >= max_iterations;
            if (exhausted) {
                OmpResult best_run{canonical_solution(support, coeffs, residual_norm),
                                   std::move(trace)};
                throw OmpInfeasibleError("omp: threshold unreachable at full support "
                                         "(best residual " +
                                             std::to_string(residual_norm) + ")",
                                         std::move(best_run));
            }
        }
    }

    return OmpResult{canonical_solution(support, coeffs, trace.iterations.back().residual_norm),
                     std::move(trace)};
}

} // namespace

OmpResult omp_mode1(const ComplexMatrix &dictionary, const ComplexVector &desired, int sparsity,
                    const OmpOptions &options) {
    StopRule stop;
    stop.kind = StopRule::Kind::Sparsity;
    stop.sparsity = sparsity;
    return omp_run(dictionary, desired, stop, {}, options);
}

OmpResult omp_mode2(const ComplexMatrix &dictionary, const ComplexVector &desired,
                    const OmpStop &stop, const XiEvaluator &xi_eval, const OmpOptions &options) {
    StopRule rule;
    rule.kind = stop.kind == OmpStop::Kind::ResidualNorm ? StopRule::Kind::ResidualNorm
                                                         : StopRule::Kind::Xi;
    rule.threshold = stop.threshold;
    return omp_run(dictionary, desired, rule, xi_eval, options);
}

} // namespace subsynth
