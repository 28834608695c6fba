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

#include "subsynth/run.hpp"

#include <stdexcept>

namespace subsynth {

std::string to_string(SolverKind kind) {
    return kind == SolverKind::Omp ? "omp" : "ogomp";
}

SolverKind solver_kind_from_string(const std::string &name) {
    if (name == "omp")
        return SolverKind::Omp;
    if (name == "ogomp")
        return SolverKind::Ogomp;
    throw std::invalid_argument("unknown solver: " + name);
}

void validate(const RunConfig &config) {
    if (config.pattern.elements < 2)
        throw std::invalid_argument("config: pattern requires at least two elements");
    if (config.pattern.family != PatternFamily::File && !(config.pattern.sll_db > 0.0))
        throw std::invalid_argument("config: sidelobe suppression must be positive");
    if (config.pattern.family == PatternFamily::Taylor && config.pattern.nbar < 1)
        throw std::invalid_argument("config: taylor patterns need nbar >= 1");
    if (config.pattern.family == PatternFamily::File && config.pattern.file.empty())
        throw std::invalid_argument("config: file pattern needs a path");
    if (config.mode != 1 && config.mode != 2)
        throw std::invalid_argument("config: mode must be 1 or 2");
    if (config.mode == 1) {
        if (config.sparsity < 1 || config.sparsity > config.pattern.elements)
            throw std::invalid_argument("config: mode 1 needs 1 <= K <= N");
    } else {
        if (config.use_raw_epsilon) {
            if (!(config.epsilon > 0.0))
                throw std::invalid_argument("config: mode 2 with --epsilon needs epsilon > 0");
        } else if (!(config.xi_target > 0.0)) {
            throw std::invalid_argument("config: mode 2 needs xi_target > 0");
        }
    }
    if (config.refine.max_iterations < 0)
        throw std::invalid_argument("config: Q must be >= 0");
    if (!(config.refine.eta_max > 0.0))
        throw std::invalid_argument("config: eta_max must be positive");
    if (config.refine.d_min < 0.0)
        throw std::invalid_argument("config: d_min must be >= 0");
    if (config.solver_grid_points != 0 && config.solver_grid_points < 2)
        throw std::invalid_argument("config: solver grid needs at least two points");
    if (!(config.metric_step_deg > 0.0) || config.metric_step_deg > 45.0)
        throw std::invalid_argument("config: metric grid step out of range");
    if (!(config.element_spacing > 0.0))
        throw std::invalid_argument("config: element spacing must be positive");
    if (!(config.sll_scan_step_deg > 0.0))
        throw std::invalid_argument("config: SLL scan step must be positive");
}

int effective_solver_grid_points(const RunConfig &config) {
    return config.solver_grid_points > 0 ? config.solver_grid_points
                                         : 4 * config.pattern.elements + 1;
}

SynthesisProblem build_problem(const RunConfig &config) {
    validate(config);
    const int n = config.pattern.elements;
    AngleGrid solver_grid = AngleGrid::uniform(-pi / 2, pi / 2, effective_solver_grid_points(config));
    AngleGrid metric_grid = AngleGrid::uniform_deg(0.0, 90.0, config.metric_step_deg);
    DesiredPattern desired_solver = make_desired(config.pattern, solver_grid);
    DesiredPattern desired_metric = make_desired(config.pattern, metric_grid);
    return SynthesisProblem{ArrayGeometry::uniform(n, config.element_spacing),
                            std::move(solver_grid),
                            desired_solver.values(),
                            std::move(desired_metric),
                            config.paper_literal,
                            config.sll_scan_step_deg};
}

SynthesisResult run_synthesis(const RunConfig &config) {
    const SynthesisProblem problem = build_problem(config);

    OmpOptions options;
    options.exclude_selected = !config.paper_literal;
    options.normalize_columns = config.normalize_columns;

    RefinementConfig refine = config.refine;
    refine.undamped = refine.undamped || config.paper_literal;

    OmpStop stop;
    if (config.mode == 2) {
        stop.kind = config.use_raw_epsilon ? OmpStop::Kind::ResidualNorm : OmpStop::Kind::Xi;
        stop.threshold = config.use_raw_epsilon ? config.epsilon : config.xi_target;
    }

    if (config.solver == SolverKind::Omp) {
        return config.mode == 1 ? run_omp_mode1(problem, config.sparsity, options)
                                : run_omp_mode2(problem, stop, options);
    }
    return config.mode == 1
               ? run_ogomp_mode1(problem, config.sparsity, refine, options)
               : run_ogomp_mode2(problem, stop, refine, options, config.carry_geometry);
}

MetricsReport measure_result_metrics(const RunConfig &config, const ArrayGeometry &geom,
                                     const ComplexVector &excitations, int subarrays) {
    const AngleGrid metric_grid = AngleGrid::uniform_deg(0.0, 90.0, config.metric_step_deg);
    const DesiredPattern desired = make_desired(config.pattern, metric_grid);
    const ComplexVector achieved = evaluate_pattern(geom, excitations, metric_grid);

    MetricsReport report;
    report.xi = xi_metric(desired, achieved, config.paper_literal);
    report.chi = chi_metric(subarrays, config.pattern.elements);
    const SllResult sll = measure_sll(geom, excitations, config.sll_scan_step_deg);
    report.sll_db = sll.sll_db;
    report.mainlobe_peak_deg = sll.mainlobe_peak_deg;
    return report;
}

} // namespace subsynth
