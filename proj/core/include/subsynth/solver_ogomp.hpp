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

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "subsynth/metrics.hpp"
#include "subsynth/model.hpp"
#include "subsynth/solver_omp.hpp"

namespace subsynth {

/// Controls the off-grid position refinement loop.
struct RefinementConfig {
    int max_iterations = 10;  ///< Q; 0 disables refinement entirely
    double eta_max = 0.05;    ///< per-iteration cap on each |eta_i|
    double d_min = 0.25;      ///< minimum adjacent element spacing, wavelengths
    enum class Symmetry { Off, Mirror } symmetry = Symmetry::Off;
    /// Apply the raw least-squares step: no cap, no feasibility backtracking
    /// and no fit-acceptance test. A step that breaks the position ordering
    /// aborts refinement with a warning.
    bool undamped = false;
};

/// Record of a single linearized position-perturbation step.
struct PerturbationStep {
    ComplexMatrix g;  ///< M x N sensitivity matrix
    ComplexVector y;  ///< residual F_desired - Phi w the step fits
    RealVector eta;   ///< raw least-squares solution (zeros at excluded columns)
    RealVector eta_step; ///< after symmetry pairing and the eta_max cap
    bool accepted = false;
    double damping = 1.0; ///< applied step is damping * eta_step

    RealVector eta_applied() const { return damping * eta_step; }
};

/// y = F_desired - Phi w and the sensitivity matrix with column i equal to
/// w_i * d_i * (j 2 pi sin theta_m) * exp(j 2 pi d_i sin theta_m). Columns
/// with w_i == 0 or d_i == 0 vanish identically.
std::pair<ComplexMatrix, ComplexVector>
build_perturbation_system(const ComplexMatrix &phi, const AngleGrid &grid,
                          const ArrayGeometry &geom, const ComplexVector &weights,
                          const ComplexVector &desired);

struct RefineOutcome {
    ArrayGeometry geometry; ///< updated positions (input positions if rejected)
    PerturbationStep step;
};

/// One position update d_i <- d_i * (1 + eta_i): solves the real-constrained
/// LS for eta, caps each component at eta_max, then halves the whole step
/// (up to 30 times) until the updated positions stay sorted with at least
/// d_min spacing. The caller rebuilds Phi from the returned geometry.
RefineOutcome refine_positions_once(const ComplexMatrix &phi, const AngleGrid &grid,
                                    const ArrayGeometry &geom, const ComplexVector &weights,
                                    const ComplexVector &desired, const RefinementConfig &config);

struct ResolveResult {
    ComplexVector coeffs;
    double fit_residual = 0.0; ///< ||desired - B coeffs||
};

/// Re-solves the sparse coefficients on a frozen support against an updated
/// steering matrix: argmin ||desired - (Phi' Psi_hat) x||.
ResolveResult resolve_excitations(const ComplexMatrix &phi, const std::vector<int> &support,
                                  const ComplexVector &desired);

/// All inputs a synthesis run needs: the initial geometry, the fitting grid
/// with the target sampled on it, and the dense metric grid used for the
/// normalized error.
struct SynthesisProblem {
    ArrayGeometry geometry;
    AngleGrid solver_grid;
    ComplexVector desired_solver; ///< target on solver_grid
    DesiredPattern desired_metric;
    bool xi_achieved_denominator = false; ///< normalize xi by the achieved pattern instead
    double sll_scan_step_deg = 0.01;      ///< scan step for the reported sidelobe level
};

/// Per-refinement-iteration trace entry. `xi` and `fit_residual` describe
/// the state kept after the iteration (unchanged when rejected).
struct RefineIteration {
    int iteration = 0; ///< 1-based
    double xi = 0.0;
    double fit_residual = 0.0;
    double eta_norm = 0.0;    ///< l2 norm of the applied perturbation
    double eta_max_abs = 0.0; ///< largest applied |eta_i|
    bool accepted = false;
    double damping = 1.0;
};

struct SynthesisResult {
    ArrayGeometry geometry{std::vector<double>{0.0}};
    ComplexVector excitations;
    SparseSolution solution;
    SubarrayLayout layout;
    MetricsReport metrics;
    OmpTrace omp_trace;
    std::vector<RefineIteration> refine_trace;
    double xi_initial = 0.0;         ///< xi right after the greedy initialization
    bool refinement_stopped = false; ///< a step was rejected or a solve failed
    bool infeasible = false;         ///< threshold mode could not meet its target
};

/// Threshold-mode synthesis failed to reach the target; carries the best
/// attempt for best-effort reporting.
class InfeasibleError : public SolverError {
  public:
    InfeasibleError(const std::string &what, SynthesisResult best)
        : SolverError(what), best_(std::make_shared<SynthesisResult>(std::move(best))) {}

    const SynthesisResult &best() const { return *best_; }

  private:
    std::shared_ptr<const SynthesisResult> best_;
};

/// Greedy recovery on the fixed dictionary; no position refinement. The
/// result's geometry is the problem's geometry.
SynthesisResult run_omp_mode1(const SynthesisProblem &problem, int sparsity,
                              const OmpOptions &options = {});

/// Greedy recovery growing the support until the stop rule holds. Throws
/// InfeasibleError (best attempt attached) when the full support misses the
/// target.
SynthesisResult run_omp_mode2(const SynthesisProblem &problem, const OmpStop &stop,
                              const OmpOptions &options = {});

/// Fixed-sparsity synthesis with position refinement: greedy initialization,
/// then up to Q rounds of linearized position update + coefficient re-solve
/// on the frozen support. A round whose re-solved fit would exceed the
/// current fit is halved further and finally rejected (stopping the loop)
/// if no damping makes it non-increasing.
SynthesisResult run_ogomp_mode1(const SynthesisProblem &problem, int sparsity,
                                const RefinementConfig &config, const OmpOptions &options = {});

/// Minimum-subarray-count synthesis: tries h = 1, 2, ... (fresh initial
/// dictionary each time unless carry_geometry), running the mode-1 inner
/// procedure and stopping at the first h whose refined solution meets the
/// stop rule (xi or raw residual threshold).
SynthesisResult run_ogomp_mode2(const SynthesisProblem &problem, const OmpStop &stop,
                                const RefinementConfig &config, const OmpOptions &options = {},
                                bool carry_geometry = false);

} // namespace subsynth
