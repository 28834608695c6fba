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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subsynth/errors.hpp"
#include "subsynth/metrics.hpp"
#include "subsynth/patterns.hpp"
#include "subsynth/result_io.hpp"
#include "subsynth/run.hpp"
#include "subsynth/sweep.hpp"

namespace {

namespace ss = subsynth;
namespace fs = std::filesystem;

// Exit codes: every failure class gets its own code so scripts can branch.
enum ExitCode : int {
    exit_ok = 0,
    exit_drift = 1,
    exit_config = 2,
    exit_infeasible = 3,
    exit_io = 4,
    exit_solver = 5,
};

struct CommonOptions {
    std::string family = "chebyshev";
    int elements = 20;
    double sll_db = 20.0;
    int nbar = 5;
    std::string pattern_file;
    std::string solver = "ogomp";
    int mode = 1;
    int sparsity = 0;
    double xi_target = 0.0;
    double epsilon = 0.0;
    int q = 10;
    double eta_max = 0.05;
    double d_min = 0.25;
    std::string symmetry = "off";
    int solver_grid_points = 0;
    double metric_step_deg = 0.05;
    double element_spacing = 0.5;
    double sll_scan_step_deg = 0.01;
    bool normalize_columns = false;
    bool carry_geometry = false;
    bool paper_literal = false;
    std::string out_dir = "out";
};

void add_pattern_options(CLI::App *cmd, CommonOptions &opt) {
    cmd->add_option("--family", opt.family, "Pattern family: chebyshev, taylor or file")
        ->check(CLI::IsMember({"chebyshev", "taylor", "file"}));
    cmd->add_option("-N,--elements", opt.elements, "Number of array elements");
    cmd->add_option("--sll", opt.sll_db, "Sidelobe suppression in dB (positive; 20 = -20 dB lobes)");
    cmd->add_option("--nbar", opt.nbar, "Taylor: number of near-in constant-level sidelobes");
    cmd->add_option("--pattern-file", opt.pattern_file, "CSV file for --family file");
}

void add_synth_options(CLI::App *cmd, CommonOptions &opt) {
    add_pattern_options(cmd, opt);
    cmd->add_option("--solver", opt.solver, "omp or ogomp")
        ->check(CLI::IsMember({"omp", "ogomp"}));
    cmd->add_option("--mode", opt.mode, "1 = fixed subarray count, 2 = error threshold")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("-K,--subarrays", opt.sparsity, "Mode 1: number of subarrays");
    cmd->add_option("--xi-target", opt.xi_target, "Mode 2: normalized error target");
    cmd->add_option("--epsilon", opt.epsilon,
                    "Mode 2: raw residual-norm threshold (instead of --xi-target)");
    cmd->add_option("-Q,--refine-iterations", opt.q, "Max position-refinement iterations");
    cmd->add_option("--eta-max", opt.eta_max, "Per-iteration cap on each |eta_i|");
    cmd->add_option("--d-min", opt.d_min, "Minimum element spacing in wavelengths");
    cmd->add_option("--symmetry", opt.symmetry, "off or mirror")
        ->check(CLI::IsMember({"off", "mirror"}));
    cmd->add_option("--solver-grid-points", opt.solver_grid_points,
                    "Fitting-grid points (default 4N+1)");
    cmd->add_option("--metric-step-deg", opt.metric_step_deg, "Metric-grid step in degrees");
    cmd->add_option("--spacing", opt.element_spacing, "Initial uniform spacing in wavelengths");
    cmd->add_option("--sll-scan-step-deg", opt.sll_scan_step_deg, "SLL scan step in degrees");
    cmd->add_flag("--normalize-columns", opt.normalize_columns,
                  "Column-normalized matched filter");
    cmd->add_flag("--carry-geometry", opt.carry_geometry,
                  "Mode 2: keep refined positions across subarray counts");
    cmd->add_flag("--paper-literal", opt.paper_literal,
                  "Literal algorithm variants: achieved-pattern xi denominator, unrestricted "
                  "re-selection, undamped eta steps");
}

ss::RunConfig to_config(const CommonOptions &opt) {
    ss::RunConfig config;
    config.pattern.family = ss::pattern_family_from_string(opt.family);
    config.pattern.elements = opt.elements;
    config.pattern.sll_db = opt.sll_db;
    config.pattern.nbar = opt.nbar;
    config.pattern.file = opt.pattern_file;
    config.solver = ss::solver_kind_from_string(opt.solver);
    config.mode = opt.mode;
    config.sparsity = opt.sparsity;
    config.xi_target = opt.xi_target;
    config.epsilon = opt.epsilon;
    config.use_raw_epsilon = opt.epsilon > 0.0 && !(opt.xi_target > 0.0);
    config.refine.max_iterations = opt.q;
    config.refine.eta_max = opt.eta_max;
    config.refine.d_min = opt.d_min;
    config.refine.symmetry = opt.symmetry == "mirror" ? ss::RefinementConfig::Symmetry::Mirror
                                                      : ss::RefinementConfig::Symmetry::Off;
    config.solver_grid_points = opt.solver_grid_points;
    config.metric_step_deg = opt.metric_step_deg;
    config.element_spacing = opt.element_spacing;
    config.sll_scan_step_deg = opt.sll_scan_step_deg;
    config.normalize_columns = opt.normalize_columns;
    config.carry_geometry = opt.carry_geometry;
    config.paper_literal = opt.paper_literal;
    return config;
}

void print_summary(const ss::RunConfig &config, const ss::SynthesisResult &result,
                   double runtime_ms) {
    std::printf("%s %d %d %.6f %.6e %.4f %.0f\n", ss::to_string(config.solver).c_str(),
                config.mode, static_cast<int>(result.solution.support.size()),
                result.metrics.chi, result.metrics.xi, result.metrics.sll_db, runtime_ms);
}

int cmd_pattern(const CommonOptions &opt, const std::string &out_path) {
    ss::PatternSpec spec;
    spec.family = ss::pattern_family_from_string(opt.family);
    spec.elements = opt.elements;
    spec.sll_db = opt.sll_db;
    spec.nbar = opt.nbar;
    spec.file = opt.pattern_file;

    ss::AngleGrid grid = ss::AngleGrid::uniform_deg(0.0, 90.0, opt.metric_step_deg);
    ss::DesiredPattern desired = ss::make_desired(spec, grid);

    ss::PatternFile file;
    for (int i = 0; i < grid.size(); ++i)
        file.theta_deg.push_back(opt.metric_step_deg * i);
    file.values = desired.values();
    ss::save_pattern_file(out_path, file);

    // Report the realized sidelobe level of the generating array.
    if (spec.family != ss::PatternFamily::File) {
        const ss::RealVector w =
            spec.family == ss::PatternFamily::Chebyshev
                ? ss::chebyshev_excitations(spec.elements, spec.sll_db)
                : ss::taylor_excitations(spec.elements, spec.sll_db, spec.nbar);
        const ss::SllResult sll = ss::measure_sll(ss::ArrayGeometry::uniform(spec.elements, 0.5),
                                                  w.cast<ss::Complex>(), opt.sll_scan_step_deg);
        std::printf("wrote %s (%d samples), measured SLL %.4f dB\n", out_path.c_str(),
                    grid.size(), sll.sll_db);
    } else {
        std::printf("wrote %s (%d samples)\n", out_path.c_str(), grid.size());
    }
    return exit_ok;
}

int cmd_synth(const CommonOptions &opt) {
    const ss::RunConfig config = to_config(opt);
    ss::validate(config);

    bool infeasible = false;
    const auto t0 = std::chrono::steady_clock::now();
    ss::SynthesisResult result;
    try {
        result = ss::run_synthesis(config);
    } catch (const ss::InfeasibleError &e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        result = e.best();
        infeasible = true;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    ss::save_result(opt.out_dir, result, config, ms);
    print_summary(config, result, ms);
    return infeasible ? exit_infeasible : exit_ok;
}

int cmd_sweep(const CommonOptions &opt, const std::string &axis_name,
              const std::vector<double> &values, int jobs) {
    const ss::RunConfig base = to_config(opt);
    const ss::SweepAxis axis = ss::sweep_axis_from_string(axis_name);

    const auto rows = ss::run_sweep(base, axis, values, jobs);

    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec)
        throw ss::IoError("cannot create output directory: " + opt.out_dir);
    const fs::path path = fs::path(opt.out_dir) / "sweep.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ss::IoError("cannot write " + path.string());
    os << ss::sweep_csv(rows);
    os.close();

    std::printf("wrote %s (%zu rows)\n", path.string().c_str(), rows.size());
    return exit_ok;
}

int cmd_eval(const std::string &result_path) {
    const ss::LoadedResult loaded = ss::load_result(result_path);
    const ss::SynthesisResult &result = loaded.result;

    const ss::MetricsReport fresh = ss::measure_result_metrics(
        loaded.config, result.geometry, result.excitations,
        static_cast<int>(result.solution.support.size()));

    std::string drift_field;
    const double xi_tol = 1e-8 * std::max(1.0, std::abs(result.metrics.xi));
    if (std::abs(fresh.xi - result.metrics.xi) > xi_tol)
        drift_field = "metrics.xi";
    else if (std::abs(fresh.chi - result.metrics.chi) > 1e-12)
        drift_field = "metrics.chi";
    else if (std::abs(fresh.sll_db - result.metrics.sll_db) > 1e-8 &&
             !(std::isinf(fresh.sll_db) && std::isinf(result.metrics.sll_db)))
        drift_field = "metrics.sll_db";

    if (drift_field.empty()) {
        std::printf("drift: pass\n");
    } else {
        std::printf("drift: fail (%s: stored %.12e, recomputed %.12e)\n", drift_field.c_str(),
                    drift_field == "metrics.xi" ? result.metrics.xi : result.metrics.sll_db,
                    drift_field == "metrics.xi" ? fresh.xi : fresh.sll_db);
    }

    std::printf("layout: K=%d runs\n", result.layout.count());
    for (size_t r = 0; r < result.layout.runs.size(); ++r) {
        const auto &run = result.layout.runs[r];
        std::printf("  run %zu: elements %d..%d (size %d), weight %.6f%+.6fj\n", r + 1,
                    run.first + 1, run.last + 1, run.size(), run.weight.real(),
                    run.weight.imag());
    }
    std::printf("metrics: xi=%.6e chi=%.4f sll_db=%.4f peak_deg=%.4f\n", result.metrics.xi,
                result.metrics.chi, result.metrics.sll_db, result.metrics.mainlobe_peak_deg);
    return drift_field.empty() ? exit_ok : exit_drift;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"subsynth: clustered linear-array synthesis by greedy sparse recovery with "
                 "optional off-grid element-position refinement"};
    app.require_subcommand(1);

    CommonOptions pattern_opt;
    std::string pattern_out = "pattern.csv";
    CLI::App *pattern = app.add_subcommand("pattern", "Generate a desired-pattern CSV");
    add_pattern_options(pattern, pattern_opt);
    pattern->add_option("--metric-step-deg", pattern_opt.metric_step_deg,
                        "Sample step in degrees");
    pattern->add_option("--sll-scan-step-deg", pattern_opt.sll_scan_step_deg,
                        "SLL scan step in degrees");
    pattern->add_option("-o,--out", pattern_out, "Output CSV path");

    CommonOptions synth_opt;
    CLI::App *synth = app.add_subcommand("synth", "Run one synthesis");
    add_synth_options(synth, synth_opt);
    synth->add_option("-o,--out", synth_opt.out_dir, "Output directory");

    CommonOptions sweep_opt;
    std::string sweep_axis = "K";
    std::vector<double> sweep_values;
    int sweep_jobs = 1;
    CLI::App *sweep = app.add_subcommand("sweep", "One synthesis per value of an axis");
    add_synth_options(sweep, sweep_opt);
    sweep->add_option("--axis", sweep_axis, "K, xi_target, Q or sll_db");
    sweep->add_option("--values", sweep_values, "Axis values")->delimiter(',');
    sweep->add_option("--jobs", sweep_jobs, "Worker threads across rows");
    sweep->add_option("-o,--out", sweep_opt.out_dir, "Output directory");

    std::string eval_path;
    CLI::App *eval = app.add_subcommand("eval", "Recompute metrics from a result.json and "
                                                "check for drift");
    eval->add_option("result", eval_path, "Path to result.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (app.got_subcommand(pattern))
            return cmd_pattern(pattern_opt, pattern_out);
        if (app.got_subcommand(synth))
            return cmd_synth(synth_opt);
        if (app.got_subcommand(sweep))
            return cmd_sweep(sweep_opt, sweep_axis, sweep_values, sweep_jobs);
        if (app.got_subcommand(eval))
            return cmd_eval(eval_path);
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const ss::GenerationError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const ss::InfeasibleError &e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return exit_infeasible;
    } catch (const ss::IoError &e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    } catch (const ss::Error &e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return exit_solver;
    }
    return exit_config;
}
