// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths of a synthesis run.

#include <benchmark/benchmark.h>

#include "subsynth/model.hpp"
#include "subsynth/patterns.hpp"
#include "subsynth/run.hpp"
#include "subsynth/solver_ogomp.hpp"
#include "subsynth/solver_omp.hpp"

using namespace subsynth;

namespace {

SynthesisProblem problem_for(int elements, double sll_db) {
    PatternSpec spec{PatternFamily::Chebyshev, elements, sll_db, 0, {}};
    AngleGrid solver_grid = AngleGrid::uniform(-pi / 2, pi / 2, 4 * elements + 1);
    AngleGrid metric_grid = AngleGrid::uniform_deg(0.0, 90.0, 0.05);
    DesiredPattern desired_solver = make_desired(spec, solver_grid);
    return SynthesisProblem{ArrayGeometry::uniform(elements, 0.5), std::move(solver_grid),
                            desired_solver.values(), make_desired(spec, metric_grid), false,
                            0.01};
}

void BM_SteeringMatrix(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const ArrayGeometry geom = ArrayGeometry::uniform(n, 0.5);
    const AngleGrid grid = AngleGrid::uniform(-pi / 2, pi / 2, 4 * n + 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(steering_matrix(geom, grid));
}
BENCHMARK(BM_SteeringMatrix)->Arg(20)->Arg(100)->Arg(128);

void BM_Dictionary(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const ArrayGeometry geom = ArrayGeometry::uniform(n, 0.5);
    const AngleGrid grid = AngleGrid::uniform(-pi / 2, pi / 2, 4 * n + 1);
    const ComplexMatrix phi = steering_matrix(geom, grid);
    for (auto _ : state)
        benchmark::DoNotOptimize(basis_dictionary(phi));
}
BENCHMARK(BM_Dictionary)->Arg(20)->Arg(128);

void BM_GreedyRecovery(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SynthesisProblem problem = problem_for(n, 30.0);
    const ComplexMatrix a =
        basis_dictionary(steering_matrix(problem.geometry, problem.solver_grid));
    const int k = n / 4;
    for (auto _ : state)
        benchmark::DoNotOptimize(omp_mode1(a, problem.desired_solver, k));
}
BENCHMARK(BM_GreedyRecovery)->Arg(20)->Arg(100);

void BM_RefinementRound(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SynthesisProblem problem = problem_for(n, 30.0);
    const ComplexMatrix phi = steering_matrix(problem.geometry, problem.solver_grid);
    const OmpResult omp = omp_mode1(basis_dictionary(phi), problem.desired_solver, n / 4);
    const ComplexVector w = expand_support(omp.solution.support, omp.solution.coeffs, n);
    RefinementConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(refine_positions_once(phi, problem.solver_grid,
                                                       problem.geometry, w,
                                                       problem.desired_solver, config));
}
BENCHMARK(BM_RefinementRound)->Arg(20)->Arg(100);

void BM_FullSynthesis(benchmark::State &state) {
    RunConfig config;
    config.pattern = {PatternFamily::Chebyshev, 20, 20.0, 0, {}};
    config.solver = SolverKind::Ogomp;
    config.mode = 1;
    config.sparsity = 5;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_synthesis(config));
}
BENCHMARK(BM_FullSynthesis);

} // namespace

BENCHMARK_MAIN();
