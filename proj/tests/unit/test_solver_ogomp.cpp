// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <limits>
#include <random>

#include "subsynth/numerics.hpp"
#include "subsynth/run.hpp"
#include "subsynth/solver_ogomp.hpp"
#include "test_util.hpp"

using namespace subsynth;
namespace tt = subsynth::testing;

TEST_CASE("perturbation system structure") {
    std::mt19937 rng(21);
    const int n = 10;
    const ArrayGeometry geom = tt::random_geometry(rng, n);
    const AngleGrid grid = AngleGrid::uniform(-pi / 2, pi / 2, 41); // includes theta = 0
    const ComplexMatrix phi = steering_matrix(geom, grid);
    const ComplexVector fbar = tt::random_complex_vector(rng, grid.size());

    SUBCASE("zero weights zero the matrix and leave y = desired") {
        const auto [g, y] = build_perturbation_system(phi, grid, geom, ComplexVector::Zero(n), fbar);
        CHECK(g.norm() == 0.0);
        CHECK((y - fbar).norm() == 0.0);
    }

    SUBCASE("the theta = 0 row vanishes exactly") {
        const ComplexVector w = tt::random_complex_vector(rng, n);
        const auto [g, y] = build_perturbation_system(phi, grid, geom, w, fbar);
        CHECK(g.row(20).norm() == 0.0); // middle row of the symmetric grid
    }

    SUBCASE("columns agree with a finite-difference derivative") {
        const ComplexVector w = tt::random_complex_vector(rng, n);
        const auto [g, y] = build_perturbation_system(phi, grid, geom, w, fbar);
        for (int i = 0; i < n; ++i) {
            const double d = geom[i];
            const double h = 1e-6 * d;
            ComplexVector fd(grid.size());
            for (int m = 0; m < grid.size(); ++m) {
                const double s = std::sin(grid[m]);
                const Complex hi = std::polar(1.0, 2.0 * pi * (d + h) * s);
                const Complex lo = std::polar(1.0, 2.0 * pi * d * s);
                fd[m] = w[i] * (hi - lo) * (d / h);
            }
            CHECK((g.col(i) - fd).norm() <= 1e-5 * fd.norm());
        }
    }
}

TEST_CASE("refinement step control") {
    std::mt19937 rng(23);
    const int n = 12;
    const ArrayGeometry geom = ArrayGeometry::uniform(n, 0.5);
    const AngleGrid grid = AngleGrid::uniform(-pi / 2, pi / 2, 49);
    const ComplexMatrix phi = steering_matrix(geom, grid);
    RefinementConfig config;

    SUBCASE("a perfect fit leaves the geometry untouched") {
        const ComplexVector w = tt::random_complex_vector(rng, n);
        const ComplexVector fbar = phi * w;
        const RefineOutcome out = refine_positions_once(phi, grid, geom, w, fbar, config);
        CHECK(out.step.accepted);
        CHECK(out.step.eta.norm() <= 1e-10);
        for (int i = 0; i < n; ++i)
            CHECK(out.geometry[i] == geom[i]);
    }

    SUBCASE("the raw step solves the linearized least squares") {
        const ComplexVector w = ComplexVector::Ones(n);
        ComplexVector fbar = phi * w;
        fbar += 0.05 * tt::random_complex_vector(rng, grid.size());
        const RefineOutcome out = refine_positions_once(phi, grid, geom, w, fbar, config);
        const auto [g, y] = build_perturbation_system(phi, grid, geom, w, fbar);
        CHECK((y - g * out.step.eta.cast<Complex>()).norm() <= y.norm() * (1.0 + 1e-12));
        CHECK(out.step.eta_step.cwiseAbs().maxCoeff() <= config.eta_max + 1e-15);
    }

    SUBCASE("updated positions stay sorted with the minimum spacing") {
        const ComplexVector w = ComplexVector::Ones(n);
        const ComplexVector fbar = 3.0 * tt::random_complex_vector(rng, grid.size());
        RefinementConfig tight = config;
        tight.d_min = 0.49; // barely under the uniform spacing
        const RefineOutcome out = refine_positions_once(phi, grid, geom, w, fbar, tight);
        if (out.step.accepted) {
            CHECK(out.geometry.min_adjacent_spacing() >= tight.d_min - 1e-9);
            for (int i = 1; i < n; ++i)
                CHECK(out.geometry[i] > out.geometry[i - 1]);
        }
    }

    SUBCASE("mirror symmetry pairs the perturbations") {
        const SynthesisProblem problem = tt::make_problem(tt::cheb(20, 20.0));
        RefinementConfig mirror;
        mirror.symmetry = RefinementConfig::Symmetry::Mirror;
        const SynthesisResult r = run_ogomp_mode1(problem, 5, mirror);
        for (int i = 0; i < 20; ++i)
            CHECK(std::abs(r.geometry[i] + r.geometry[19 - i]) <= 1e-12);
    }
}

TEST_CASE("excitation re-solve on a frozen support") {
    const SynthesisProblem problem = tt::make_problem(tt::cheb(20, 20.0));
    const ComplexMatrix phi = steering_matrix(problem.geometry, problem.solver_grid);
    const ComplexMatrix a = basis_dictionary(phi);
    const OmpResult omp = omp_mode1(a, problem.desired_solver, 5);

    SUBCASE("unchanged geometry reproduces the greedy coefficients") {
        const ResolveResult rr = resolve_excitations(phi, omp.solution.support,
                                                     problem.desired_solver);
        CHECK((rr.coeffs - omp.solution.coeffs).norm() <= 1e-10 * omp.solution.coeffs.norm());
        CHECK(std::abs(rr.fit_residual - omp.solution.residual_norm) <= 1e-10);
    }

    SUBCASE("a single-column support is the scalar projection") {
        const std::vector<int> support{0};
        const ResolveResult rr = resolve_excitations(phi, support, problem.desired_solver);
        const ComplexVector atom = a.col(0);
        const Complex oracle =
            atom.dot(problem.desired_solver) / atom.squaredNorm(); // dot conjugates lhs
        CHECK(std::abs(rr.coeffs[0] - oracle) <= 1e-12 * std::abs(oracle));
    }

    SUBCASE("matches the normal-equations oracle on a perturbed geometry") {
        std::mt19937 rng(31);
        std::vector<double> moved = problem.geometry.positions();
        for (auto &d : moved)
            d *= 1.0 + 0.01 * std::uniform_real_distribution<double>(-1, 1)(rng);
        std::sort(moved.begin(), moved.end());
        const ArrayGeometry geom2((std::vector<double>(moved)));
        const ComplexMatrix phi2 = steering_matrix(geom2, problem.solver_grid);
        const std::vector<int> support{0, 7, 14};
        const ResolveResult rr = resolve_excitations(phi2, support, problem.desired_solver);
        const ComplexMatrix b = dictionary_columns(phi2, support);
        const ComplexMatrix gram = b.adjoint() * b;
        const ComplexVector oracle = gram.inverse() * (b.adjoint() * problem.desired_solver);
        CHECK((rr.coeffs - oracle).norm() <= 1e-8 * oracle.norm());
    }
}

TEST_CASE("one refinement round strictly improves the fit from the greedy start") {
    const SynthesisProblem problem = tt::make_problem(tt::cheb(20, 20.0));
    RefinementConfig config;
    config.max_iterations = 1;
    const SynthesisResult r = run_ogomp_mode1(problem, 5, config);
    REQUIRE(r.refine_trace.size() == 1);
    CHECK(r.refine_trace[0].accepted);
    CHECK(r.refine_trace[0].fit_residual < r.solution.residual_norm * (1.0 + 1e-12));
    // the greedy fit for this scenario sits well above the refined one
    CHECK(r.refine_trace[0].xi < r.xi_initial);
}

TEST_CASE("Q = 0 refinement is bit-identical to the greedy solver") {
    for (const PatternSpec &spec : {tt::cheb(20, 20.0), tt::cheb(16, 25.0)}) {
        const SynthesisProblem problem = tt::make_problem(spec);
        RefinementConfig off;
        off.max_iterations = 0;
        for (int k : {1, 3, 5}) {
            const SynthesisResult omp = run_omp_mode1(problem, k);
            const SynthesisResult og = run_ogomp_mode1(problem, k, off);
            CHECK(omp.solution.support == og.solution.support);
            CHECK(tt::bitwise_equal(omp.solution.coeffs, og.solution.coeffs));
            CHECK(std::memcmp(&omp.metrics.xi, &og.metrics.xi, sizeof(double)) == 0);
            CHECK(og.refine_trace.empty());
        }
    }
}

TEST_CASE("fit residual never increases across accepted refinement rounds") {
    const SynthesisProblem problem = tt::make_problem(tt::cheb(20, 20.0));
    RefinementConfig config;
    const SynthesisResult r = run_ogomp_mode1(problem, 5, config);
    double last = std::numeric_limits<double>::infinity();
    for (const auto &row : r.refine_trace) {
        if (row.accepted) {
            CHECK(row.fit_residual <= last * (1.0 + 1e-12));
            last = row.fit_residual;
        }
        CHECK(row.eta_max_abs <= config.eta_max * (1.0 + 1e-12));
    }
    if (!r.refine_trace.empty())
        CHECK(r.solution.residual_norm == r.refine_trace.back().fit_residual);
    // geometry invariants hold at the end
    CHECK(r.geometry.min_adjacent_spacing() >= config.d_min - 1e-9);
}

TEST_CASE("threshold mode returns the smallest feasible subarray count") {
    const SynthesisProblem problem = tt::make_problem(tt::cheb(20, 20.0));
    RefinementConfig config;
    OmpStop stop;
    stop.kind = OmpStop::Kind::Xi;

    SUBCASE("a vacuous target is met by one subarray") {
        stop.threshold = 1.0;
        const SynthesisResult r = run_ogomp_mode2(problem, stop, config);
        CHECK(r.solution.support.size() == 1);
        CHECK(r.metrics.xi <= 1.0);
    }

    SUBCASE("carrying refined positions across counts still meets the target") {
        stop.threshold = 1e-3;
        const SynthesisResult r = run_ogomp_mode2(problem, stop, config, {}, true);
        CHECK(r.metrics.xi <= stop.threshold);
        CHECK(r.solution.support.size() >= 1);
    }

    SUBCASE("minimality: one fewer subarray misses the target") {
        stop.threshold = 1e-3;
        const SynthesisResult r = run_ogomp_mode2(problem, stop, config);
        CHECK(r.metrics.xi <= stop.threshold);
        const int h = static_cast<int>(r.solution.support.size());
        REQUIRE(h > 1);
        const SynthesisResult fewer = run_ogomp_mode1(problem, h - 1, config);
        double best = fewer.xi_initial;
        for (const auto &row : fewer.refine_trace)
            best = std::min(best, row.xi);
        CHECK(best > stop.threshold);
    }
}

TEST_CASE("threshold mode reports infeasibility with the best attempt attached") {
    // a Gaussian beam is not the array factor of any 8-element layout, so
    // the residual has a floor no refinement can cross
    const int n = 8;
    AngleGrid solver_grid = AngleGrid::uniform(-pi / 2, pi / 2, 4 * n + 1);
    AngleGrid metric_grid = AngleGrid::uniform_deg(0.0, 90.0, 0.05);
    auto gaussian = [](const AngleGrid &grid) {
        ComplexVector v(grid.size());
        for (int m = 0; m < grid.size(); ++m)
            v[m] = Complex(8.0 * std::exp(-8.0 * grid[m] * grid[m]), 0.0);
        return v;
    };
    const SynthesisProblem problem{ArrayGeometry::uniform(n, 0.5), solver_grid,
                                   gaussian(solver_grid),
                                   DesiredPattern(metric_grid, gaussian(metric_grid)), false,
                                   0.01};
    RefinementConfig config;
    config.max_iterations = 2;
    OmpStop stop;
    stop.kind = OmpStop::Kind::Xi;
    stop.threshold = 1e-16;
    CHECK_THROWS_AS(run_ogomp_mode2(problem, stop, config), InfeasibleError);
    try {
        run_ogomp_mode2(problem, stop, config);
    } catch (const InfeasibleError &e) {
        CHECK(e.best().infeasible);
        CHECK(e.best().metrics.xi > stop.threshold);
    }
}

TEST_CASE("reference rows: 100-element greedy threshold and 128-element Taylor") {
    {
        // greedy-only threshold mode on the 100-element reference
        RunConfig config;
        config.pattern = tt::cheb(100, 30.0);
        config.solver = SolverKind::Omp;
        config.mode = 2;
        config.xi_target = 1e-2;
        const SynthesisResult r = run_synthesis(config);
        CHECK(r.metrics.chi == doctest::Approx(0.09).epsilon(1e-12));
        CHECK(r.metrics.xi <= 1e-2);
    }
    {
        // Taylor reference: threshold mode meets the 2.76e-3 target at a
        // subarray rate no worse than the reference 0.101 + 0.10 band, and
        // the 13-subarray operating point reaches the deep sidelobe floor
        RunConfig config;
        config.pattern = tt::taylor(128, 50.0, 5);
        config.solver = SolverKind::Ogomp;
        config.mode = 2;
        config.xi_target = 2.76e-3;
        const SynthesisResult r = run_synthesis(config);
        CHECK(r.metrics.xi <= 2.76e-3);
        CHECK(std::abs(r.metrics.chi - 0.101) <= 0.10);

        RunConfig fixed = config;
        fixed.mode = 1;
        fixed.sparsity = 13;
        const SynthesisResult at13 = run_synthesis(fixed);
        CHECK(at13.metrics.sll_db <= -35.0);
    }
}

TEST_CASE("the undamped literal step either applies raw or aborts with a warning") {
    const SynthesisProblem problem = tt::make_problem(tt::cheb(12, 20.0));
    RefinementConfig config;
    config.undamped = true;
    config.max_iterations = 3;
    const SynthesisResult r = run_ogomp_mode1(problem, 3, config);
    CHECK(r.solution.support.size() == 3);
    // either all steps applied or the loop stopped early with the flag set
    if (r.refine_trace.size() < 3)
        CHECK(r.refinement_stopped);
}
