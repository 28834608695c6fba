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

#include "subsynth/solver_ogomp.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "subsynth/numerics.hpp"

namespace subsynth {

namespace {

constexpr int max_halvings = 30;
// A re-solved fit may only grow by roundoff before the step is damped
// further.
constexpr double fit_accept_slack = 1e-12;

bool positions_feasible(const std::vector<double> &positions, double d_min) {
    for (size_t i = 1; i < positions.size(); ++i) {
        const double gap = positions[i] - positions[i - 1];
        if (gap <= 0.0 || gap < d_min - 1e-12)
            return false;
    }
    return true;
}

std::vector<double> perturbed_positions(const ArrayGeometry &geom, const RealVector &eta_step,
                                        double scale) {
    std::vector<double> positions(geom.positions());
    for (size_t i = 0; i < positions.size(); ++i)
        positions[i] *= 1.0 + scale * eta_step[static_cast<Eigen::Index>(i)];
    return positions;
}

/// xi evaluated through a steering matrix cached per geometry, so every
/// solver path computes the metric with the exact same arithmetic.
class MetricEvaluator {
  public:
    MetricEvaluator(const DesiredPattern &desired, bool achieved_denominator)
        : desired_(desired), achieved_denominator_(achieved_denominator) {}

    void rebuild(const ArrayGeometry &geom) {
        phi_metric_ = steering_matrix(geom, desired_.grid());
    }

    double xi(const ComplexVector &weights) const {
        return xi_metric(desired_, phi_metric_ * weights, achieved_denominator_);
    }

  private:
    const DesiredPattern &desired_;
    bool achieved_denominator_;
    ComplexMatrix phi_metric_;
};

struct SolverState {
    ArrayGeometry geometry{std::vector<double>{0.0}};
    ComplexMatrix phi;
    std::vector<int> support;
    ComplexVector coeffs;
    ComplexVector weights;
    double fit = 0.0;
    double xi = 0.0;
};

SynthesisResult package(const SolverState &state, OmpTrace omp_trace,
                        std::vector<RefineIteration> refine_trace, double xi_initial,
                        bool refinement_stopped, int elements) {
    SynthesisResult result;
    result.geometry = state.geometry;
    result.excitations = state.weights;
    result.solution.support = state.support;
    result.solution.coeffs = state.coeffs;
    result.solution.residual_norm = state.fit;
    result.layout = extract_layout(result.solution, elements);
    result.metrics.xi = state.xi;
    result.metrics.chi = chi_metric(static_cast<int>(state.support.size()), elements);
    result.metrics.sll_db = std::numeric_limits<double>::quiet_NaN();
    result.metrics.mainlobe_peak_deg = std::numeric_limits<double>::quiet_NaN();
    result.omp_trace = std::move(omp_trace);
    result.refine_trace = std::move(refine_trace);
    result.xi_initial = xi_initial;
    result.refinement_stopped = refinement_stopped;
    return result;
}

void finalize_metrics(SynthesisResult &result, double scan_step_deg) {
    const SllResult sll = measure_sll(result.geometry, result.excitations, scan_step_deg);
    result.metrics.sll_db = sll.sll_db;
    result.metrics.mainlobe_peak_deg = sll.mainlobe_peak_deg;
}

/// Shared mode-1 core: greedy initialization then up to Q refinement
/// rounds. `stop` (when set) ends the loop as soon as the tracked quantity
/// meets the threshold, which is how the mode-2 wrapper drives it.
SynthesisResult ogomp_core(const SynthesisProblem &problem, int sparsity,
                           const RefinementConfig &config, const OmpOptions &options,
                           const std::optional<OmpStop> &stop) {
    const int n = problem.geometry.size();
    MetricEvaluator metric(problem.desired_metric, problem.xi_achieved_denominator);

    SolverState state;
    state.geometry = problem.geometry;
    state.phi = steering_matrix(state.geometry, problem.solver_grid);
    metric.rebuild(state.geometry);

    const ComplexMatrix dictionary = basis_dictionary(state.phi);
    OmpResult omp = omp_mode1(dictionary, problem.desired_solver, sparsity, options);
    state.support = omp.solution.support;
    state.coeffs = omp.solution.coeffs;
    state.fit = omp.solution.residual_norm;
    state.weights = expand_support(state.support, state.coeffs, n);
    state.xi = metric.xi(state.weights);
    const double xi_initial = state.xi;

    auto target_met = [&]() {
        if (!stop)
            return false;
        return stop->kind == OmpStop::Kind::Xi ? state.xi <= stop->threshold
                                               : state.fit <= stop->threshold;
    };

    std::vector<RefineIteration> trace;
    bool stopped = false;

    for (int q = 1; q <= config.max_iterations && !target_met(); ++q) {
        RefineIteration row;
        row.iteration = q;
        try {
            RefineOutcome outcome = refine_positions_once(
                state.phi, problem.solver_grid, state.geometry, state.weights,
                problem.desired_solver, config);
            if (!outcome.step.accepted) {
                row.xi = state.xi;
                row.fit_residual = state.fit;
                row.accepted = false;
                row.damping = outcome.step.damping;
                trace.push_back(row);
                stopped = true;
                break;
            }

            // Accept only if the re-solved fit does not grow; otherwise damp
            // the same step further before giving up on it.
            double scale = outcome.step.damping;
            ArrayGeometry candidate = outcome.geometry;
            bool accepted = false;
            ComplexMatrix phi_candidate;
            ResolveResult resolved;
            for (int h = 0; h <= max_halvings; ++h) {
                phi_candidate = steering_matrix(candidate, problem.solver_grid);
                resolved =
                    resolve_excitations(phi_candidate, state.support, problem.desired_solver);
                if (config.undamped ||
                    resolved.fit_residual <= state.fit * (1.0 + fit_accept_slack)) {
                    accepted = true;
                    break;
                }
                scale *= 0.5;
                candidate = ArrayGeometry(perturbed_positions(state.geometry,
                                                              outcome.step.eta_step, scale));
            }

            const RealVector applied = scale * outcome.step.eta_step;
            row.eta_norm = applied.norm();
            row.eta_max_abs = applied.size() > 0 ? applied.cwiseAbs().maxCoeff() : 0.0;
            row.damping = scale;
            if (!accepted) {
                row.xi = state.xi;
                row.fit_residual = state.fit;
                row.accepted = false;
                trace.push_back(row);
                stopped = true;
                break;
            }

            state.geometry = candidate;
            state.phi = phi_candidate;
            state.coeffs = resolved.coeffs;
            state.fit = resolved.fit_residual;
            state.weights = expand_support(state.support, state.coeffs, n);
            metric.rebuild(state.geometry);
            state.xi = metric.xi(state.weights);

            row.xi = state.xi;
            row.fit_residual = state.fit;
            row.accepted = true;
            trace.push_back(row);
        } catch (const SolverError &) {
            // Keep the best iterate reached so far and flag the early stop.
            row.xi = state.xi;
            row.fit_residual = state.fit;
            row.accepted = false;
            trace.push_back(row);
            stopped = true;
            break;
        }
    }

    return package(state, std::move(omp.trace), std::move(trace), xi_initial, stopped, n);
}

} // namespace

std::pair<ComplexMatrix, ComplexVector>
build_perturbation_system(const ComplexMatrix &phi, const AngleGrid &grid,
                          const ArrayGeometry &geom, const ComplexVector &weights,
                          const ComplexVector &desired) {
    if (phi.rows() != grid.size() || phi.cols() != geom.size())
        throw std::invalid_argument("build_perturbation_system: steering matrix shape mismatch");
    if (weights.size() != geom.size() || desired.size() != grid.size())
        throw std::invalid_argument("build_perturbation_system: dimension mismatch");

    const ComplexVector y = desired - phi * weights;
    ComplexMatrix g(phi.rows(), phi.cols());
    for (Eigen::Index i = 0; i < phi.cols(); ++i) {
        const Complex wd = weights[i] * geom[static_cast<int>(i)];
        for (Eigen::Index m = 0; m < phi.rows(); ++m) {
            const double s = std::sin(grid[static_cast<int>(m)]);
            g(m, i) = wd * Complex(0.0, 2.0 * pi * s) * phi(m, i);
        }
    }
    return {std::move(g), y};
}

RefineOutcome refine_positions_once(const ComplexMatrix &phi, const AngleGrid &grid,
                                    const ArrayGeometry &geom, const ComplexVector &weights,
                                    const ComplexVector &desired,
                                    const RefinementConfig &config) {
    auto [g, y] = build_perturbation_system(phi, grid, geom, weights, desired);
    const int n = geom.size();

    // Columns with w_i = 0 or d_i = 0 vanish identically; a multiplicative
    // perturbation cannot move those elements, so their eta stays 0.
    std::vector<int> active;
    for (int i = 0; i < n; ++i)
        if (weights[i] != Complex(0.0, 0.0) && geom[i] != 0.0)
            active.push_back(i);

    RealVector eta = RealVector::Zero(n);
    if (!active.empty()) {
        ComplexMatrix g_active(g.rows(), static_cast<Eigen::Index>(active.size()));
        for (size_t k = 0; k < active.size(); ++k)
            g_active.col(static_cast<Eigen::Index>(k)) = g.col(active[k]);
        const RealVector eta_active = lstsq_real_constrained(g_active, y);
        for (size_t k = 0; k < active.size(); ++k)
            eta[active[k]] = eta_active[static_cast<Eigen::Index>(k)];
    }

    RealVector eta_step = eta;
    if (config.symmetry == RefinementConfig::Symmetry::Mirror) {
        for (int i = 0; i < n / 2; ++i) {
            const double avg = 0.5 * (eta_step[i] + eta_step[n - 1 - i]);
            eta_step[i] = avg;
            eta_step[n - 1 - i] = avg;
        }
    }
    if (!config.undamped)
        eta_step = eta_step.cwiseMax(-config.eta_max).cwiseMin(config.eta_max);

    PerturbationStep step;
    step.g = std::move(g);
    step.y = std::move(y);
    step.eta = std::move(eta);
    step.eta_step = std::move(eta_step);

    if (config.undamped) {
        std::vector<double> candidate = perturbed_positions(geom, step.eta_step, 1.0);
        if (!positions_feasible(candidate, 0.0)) {
            step.accepted = false;
            step.damping = 1.0;
            return {geom, std::move(step)};
        }
        step.accepted = true;
        step.damping = 1.0;
        return {ArrayGeometry(std::move(candidate)), std::move(step)};
    }

    double scale = 1.0;
    for (int h = 0; h <= max_halvings; ++h) {
        std::vector<double> candidate = perturbed_positions(geom, step.eta_step, scale);
        if (positions_feasible(candidate, config.d_min)) {
            step.accepted = true;
            step.damping = scale;
            return {ArrayGeometry(std::move(candidate)), std::move(step)};
        }
        scale *= 0.5;
    }
    step.accepted = false;
    step.damping = scale;
    return {geom, std::move(step)};
}

ResolveResult resolve_excitations(const ComplexMatrix &phi, const std::vector<int> &support,
                                  const ComplexVector &desired) {
    if (support.empty())
        throw std::invalid_argument("resolve_excitations: empty support");
    if (static_cast<Eigen::Index>(support.size()) > phi.rows())
        throw std::invalid_argument("resolve_excitations: support larger than the grid");
    const ComplexMatrix b = dictionary_columns(phi, support);
    ResolveResult result;
    result.coeffs = lstsq_complex(b, desired);
    result.fit_residual = (desired - b * result.coeffs).norm();
    return result;
}

SynthesisResult run_omp_mode1(const SynthesisProblem &problem, int sparsity,
                              const OmpOptions &options) {
    const int n = problem.geometry.size();
    MetricEvaluator metric(problem.desired_metric, problem.xi_achieved_denominator);

    SolverState state;
    state.geometry = problem.geometry;
    state.phi = steering_matrix(state.geometry, problem.solver_grid);
    metric.rebuild(state.geometry);

    OmpResult omp =
        omp_mode1(basis_dictionary(state.phi), problem.desired_solver, sparsity, options);
    state.support = omp.solution.support;
    state.coeffs = omp.solution.coeffs;
    state.fit = omp.solution.residual_norm;
    state.weights = expand_support(state.support, state.coeffs, n);
    state.xi = metric.xi(state.weights);

    SynthesisResult result = package(state, std::move(omp.trace), {}, state.xi, false, n);
    finalize_metrics(result, problem.sll_scan_step_deg);
    return result;
}

SynthesisResult run_omp_mode2(const SynthesisProblem &problem, const OmpStop &stop,
                              const OmpOptions &options) {
    const int n = problem.geometry.size();
    MetricEvaluator metric(problem.desired_metric, problem.xi_achieved_denominator);

    SolverState state;
    state.geometry = problem.geometry;
    state.phi = steering_matrix(state.geometry, problem.solver_grid);
    metric.rebuild(state.geometry);

    const XiEvaluator xi_eval = [&metric](const ComplexVector &w) { return metric.xi(w); };
    try {
        OmpResult omp = omp_mode2(basis_dictionary(state.phi), problem.desired_solver, stop,
                                  xi_eval, options);
        state.support = omp.solution.support;
        state.coeffs = omp.solution.coeffs;
        state.fit = omp.solution.residual_norm;
        state.weights = expand_support(state.support, state.coeffs, n);
        state.xi = metric.xi(state.weights);
        SynthesisResult result = package(state, std::move(omp.trace), {}, state.xi, false, n);
        finalize_metrics(result, problem.sll_scan_step_deg);
        return result;
    } catch (const OmpInfeasibleError &e) {
        const OmpResult &best = e.best();
        state.support = best.solution.support;
        state.coeffs = best.solution.coeffs;
        state.fit = best.solution.residual_norm;
        state.weights = expand_support(state.support, state.coeffs, n);
        state.xi = metric.xi(state.weights);
        SynthesisResult result = package(state, OmpTrace(best.trace), {}, state.xi, false, n);
        result.infeasible = true;
        finalize_metrics(result, problem.sll_scan_step_deg);
        throw InfeasibleError(e.what(), std::move(result));
    }
}

SynthesisResult run_ogomp_mode1(const SynthesisProblem &problem, int sparsity,
                                const RefinementConfig &config, const OmpOptions &options) {
    SynthesisResult result = ogomp_core(problem, sparsity, config, options, std::nullopt);
    finalize_metrics(result, problem.sll_scan_step_deg);
    return result;
}

SynthesisResult run_ogomp_mode2(const SynthesisProblem &problem, const OmpStop &stop,
                                const RefinementConfig &config, const OmpOptions &options,
                                bool carry_geometry) {
    if (!(stop.threshold > 0.0))
        throw std::invalid_argument("run_ogomp_mode2: threshold must be positive");
    const int n = problem.geometry.size();

    SynthesisProblem current = problem;
    std::optional<SynthesisResult> best;
    for (int h = 1; h <= n; ++h) {
        SynthesisResult result = ogomp_core(current, h, config, options, stop);
        const double achieved =
            stop.kind == OmpStop::Kind::Xi ? result.metrics.xi : result.solution.residual_norm;
        if (achieved <= stop.threshold) {
            finalize_metrics(result, problem.sll_scan_step_deg);
            return result;
        }
        const double best_so_far = !best ? std::numeric_limits<double>::infinity()
                                         : (stop.kind == OmpStop::Kind::Xi
                                                ? best->metrics.xi
                                                : best->solution.residual_norm);
        if (achieved < best_so_far)
            best = result;
        if (carry_geometry)
            current.geometry = result.geometry;
    }

    best->infeasible = true;
    finalize_metrics(*best, problem.sll_scan_step_deg);
    throw InfeasibleError("run_ogomp_mode2: target unreachable at full support", std::move(*best));
}

} // namespace subsynth
