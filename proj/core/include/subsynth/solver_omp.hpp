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

#include <functional>
#include <memory>
#include <vector>

#include "subsynth/errors.hpp"
#include "subsynth/model.hpp"

namespace subsynth {

/// Greedy sparse recovery result: the selected dictionary columns (sorted,
/// 0-based), their least-squares coefficients and the final residual norm.
struct SparseSolution {
    std::vector<int> support;
    ComplexVector coeffs;
    double residual_norm = 0.0;
};

struct OmpIteration {
    int chosen = -1;            ///< column picked this iteration
    double residual_norm = 0.0; ///< after the LS re-solve
};

struct OmpTrace {
    std::vector<OmpIteration> iterations;
};

struct OmpResult {
    SparseSolution solution;
    OmpTrace trace;
};

struct OmpOptions {
    /// Restrict the matched-filter argmax to columns not yet selected.
    /// Turning this off reproduces the unrestricted selection rule (useful
    /// only for comparison; a re-selected column makes no progress).
    bool exclude_selected = true;
    /// Divide correlations by the column norms before the argmax. Off by
    /// default: the plain adjoint product is used even though dictionary
    /// columns have very different norms.
    bool normalize_columns = false;
    /// Correlation magnitudes within this relative distance of the maximum
    /// count as ties; the lowest column index wins.
    double tie_tol = 1e-12;
};

/// Evaluates the normalized pattern-matching error of a candidate full
/// excitation vector; used for threshold-mode termination.
using XiEvaluator = std::function<double(const ComplexVector &w_full)>;

/// Termination rule for threshold mode: either the raw residual norm
/// ||F - A x|| <= epsilon, or the normalized error xi <= target (computed
/// by a caller-supplied evaluator on a dense metric grid).
struct OmpStop {
    enum class Kind { ResidualNorm, Xi } kind = Kind::Xi;
    double threshold = 0.0;
};

/// Threshold mode could not be met even with every column selected. Carries
/// the best run (full support) for best-effort reporting.
class OmpInfeasibleError : public SolverError {
  public:
    OmpInfeasibleError(const std::string &what, OmpResult best)
        : SolverError(what), best_(std::make_shared<OmpResult>(std::move(best))) {}

    const OmpResult &best() const { return *best_; }

  private:
    std::shared_ptr<const OmpResult> best_;
};

/// Fixed-sparsity greedy recovery: exactly `sparsity` iterations of
/// correlate / select / least-squares re-solve against the dictionary
/// A = Phi * Psi. Requires 1 <= sparsity <= columns.
OmpResult omp_mode1(const ComplexMatrix &dictionary, const ComplexVector &desired, int sparsity,
                    const OmpOptions &options = {});

/// Threshold mode: iterates until the stop rule holds, returning the
/// smallest iteration count that satisfies it. Throws
/// OmpInfeasibleError if the full support cannot meet the threshold.
/// `xi_eval` is required for the Xi stop kind.
OmpResult omp_mode2(const ComplexMatrix &dictionary, const ComplexVector &desired,
                    const OmpStop &stop, const XiEvaluator &xi_eval = {},
                    const OmpOptions &options = {});

} // namespace subsynth
