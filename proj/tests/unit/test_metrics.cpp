// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "subsynth/metrics.hpp"
#include "subsynth/patterns.hpp"
#include "test_util.hpp"

using namespace subsynth;
namespace tt = subsynth::testing;

namespace {

DesiredPattern sample_desired() {
    const AngleGrid grid = AngleGrid::uniform_deg(0.0, 90.0, 0.05);
    return make_desired(tt::cheb(20, 20.0), grid);
}

} // namespace

TEST_CASE("xi identities") {
    const DesiredPattern desired = sample_desired();

    CHECK(xi_metric(desired, desired.values()) == 0.0);
    CHECK(xi_metric(desired, ComplexVector::Zero(desired.size())) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const double delta = 0.1;
    const double xi = xi_metric(desired, (1.0 + delta) * desired.values());
    CHECK(std::abs(xi - delta * delta) <= 1e-10 * delta * delta);

    // doubling the error quadruples xi
    std::mt19937 rng(3);
    const ComplexVector e = tt::random_complex_vector(rng, desired.size());
    const double x1 = xi_metric(desired, desired.values() + e);
    const double x2 = xi_metric(desired, desired.values() + 2.0 * e);
    CHECK(std::abs(x2 - 4.0 * x1) <= 1e-10 * x2);
}

TEST_CASE("xi error handling and the achieved-denominator variant") {
    const DesiredPattern desired = sample_desired();
    CHECK_THROWS_AS(xi_metric(desired, ComplexVector::Zero(3)), std::invalid_argument);

    // the literal form diverges as the achieved pattern vanishes
    CHECK(std::isinf(xi_metric(desired, ComplexVector::Zero(desired.size()), true)));
    const double lit = xi_metric(desired, 1.1 * desired.values(), true);
    const double def = xi_metric(desired, 1.1 * desired.values(), false);
    CHECK(lit == doctest::Approx(def / 1.21).epsilon(1e-10));
}

TEST_CASE("chi is the exact subarray rate") {
    CHECK(chi_metric(5, 20) == 0.25);
    CHECK(chi_metric(7, 7) == 1.0);
    CHECK(chi_metric(9, 100) == doctest::Approx(0.09).epsilon(1e-15));
    CHECK_THROWS_AS(chi_metric(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(chi_metric(11, 10), std::invalid_argument);
}

TEST_CASE("measured sidelobe level of reference arrays") {
    // uniform 16-element half-wavelength array: first Dirichlet sidelobe;
    // oracle below recomputes the level from the closed-form array factor
    const ArrayGeometry geom = ArrayGeometry::uniform(16, 0.5);
    const SllResult s = measure_sll(geom, ComplexVector::Ones(16));
    CHECK(std::abs(s.sll_db + 13.1) <= 0.3);
    CHECK(std::abs(s.mainlobe_peak_deg) <= 0.011);

    double worst = -1.0;
    bool past_null = false;
    double prev = 16.0;
    for (double deg = 0.0; deg <= 90.0; deg += 0.01) {
        const double psi = pi * std::sin(deg2rad(deg));
        const double num = std::sin(8.0 * psi);
        const double den = std::sin(0.5 * psi);
        const double mag = den == 0.0 ? 16.0 : std::abs(num / den);
        if (!past_null && mag > prev)
            past_null = true;
        if (past_null)
            worst = std::max(worst, mag);
        prev = mag;
    }
    const double oracle_db = 20.0 * std::log10(worst / 16.0);
    CHECK(std::abs(s.sll_db - oracle_db) <= 0.02);
}

TEST_CASE("sidelobe level degenerate and invariance cases") {
    const ArrayGeometry single(std::vector<double>{0.0});
    const SllResult s1 = measure_sll(single, ComplexVector::Ones(1));
    CHECK(std::isinf(s1.sll_db));
    CHECK(s1.sll_db < 0.0);

    CHECK_THROWS_AS(measure_sll(single, ComplexVector::Zero(1)), std::invalid_argument);

    // invariant to global complex scaling
    const ArrayGeometry geom = ArrayGeometry::uniform(12, 0.5);
    const ComplexVector w = chebyshev_excitations(12, 22.0).cast<Complex>();
    const SllResult a = measure_sll(geom, w);
    const SllResult b = measure_sll(geom, Complex(0.3, -1.7) * w);
    CHECK(std::abs(a.sll_db - b.sll_db) <= 1e-12);
    CHECK(a.mainlobe_peak_deg == b.mainlobe_peak_deg);
}

TEST_CASE("a beam steered to the scan boundary still measures cleanly") {
    // peak at +90 deg: the lobe ends at the boundary (the pattern mirrors
    // there), so sidelobes come from the inward side only; spacing stays
    // under a half wavelength to keep the opposite endfire free of a
    // grating lobe
    const int n = 16;
    const ArrayGeometry geom = ArrayGeometry::uniform(n, 0.4);
    ComplexVector w(n);
    for (int i = 0; i < n; ++i)
        w[i] = std::polar(1.0, -2.0 * pi * geom[i]);
    const SllResult s = measure_sll(geom, w);
    CHECK(std::abs(s.mainlobe_peak_deg - 90.0) <= 0.011);
    CHECK(s.sll_db < -10.0);
    CHECK(std::isfinite(s.sll_db));
}

TEST_CASE("layout extraction groups equal-weight runs") {
    {
        SparseSolution sol;
        sol.support = {0};
        sol.coeffs = ComplexVector::Ones(1);
        const SubarrayLayout layout = extract_layout(sol, 8);
        CHECK(layout.count() == 1);
        CHECK(layout.runs[0].first == 0);
        CHECK(layout.runs[0].last == 7);
    }
    {
        // breakpoints {1,6,14,19,20} in 1-based element indices
        SparseSolution sol;
        sol.support = {0, 5, 13, 18, 19};
        sol.coeffs = ComplexVector(5);
        sol.coeffs << Complex(1.0, 0), Complex(-0.3, 0), Complex(0.2, 0), Complex(-0.4, 0),
            Complex(0.6, 0);
        const SubarrayLayout layout = extract_layout(sol, 20);
        CHECK(layout.count() == 5);
        const int sizes[5] = {5, 8, 5, 1, 1};
        for (int k = 0; k < 5; ++k)
            CHECK(layout.runs[static_cast<size_t>(k)].size() == sizes[k]);
    }
    {
        // a typical synthesized layout for the 20-element case: weights
        // (1.0000, 0.5804 x5, 0.8583 x8, 0.5804 x5, 1.0000)
        SparseSolution sol;
        sol.support = {0, 1, 6, 14, 19};
        sol.coeffs = ComplexVector(5);
        sol.coeffs << Complex(1.0, 0), Complex(0.5804 - 1.0, 0), Complex(0.8583 - 0.5804, 0),
            Complex(0.5804 - 0.8583, 0), Complex(1.0 - 0.5804, 0);
        const SubarrayLayout layout = extract_layout(sol, 20);
        REQUIRE(layout.count() == 5);
        const int sizes[5] = {1, 5, 8, 5, 1};
        const double weights[5] = {1.0, 0.5804, 0.8583, 0.5804, 1.0};
        for (int k = 0; k < 5; ++k) {
            CHECK(layout.runs[static_cast<size_t>(k)].size() == sizes[k]);
            CHECK(std::abs(layout.runs[static_cast<size_t>(k)].weight - Complex(weights[k], 0)) <=
                  1e-12);
        }
    }
    {
        // a vanishing step merges adjacent runs
        SparseSolution sol;
        sol.support = {0, 3};
        sol.coeffs = ComplexVector(2);
        sol.coeffs << Complex(1.0, 0.0), Complex(1e-14, 0.0);
        CHECK(extract_layout(sol, 6, 1e-9).count() == 1);
        CHECK(extract_layout(sol, 6, 1e-16).count() == 2);
    }
}

TEST_CASE("layout run count equals support size for distinct partial sums") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 10 + static_cast<int>(rng() % 8);
        std::vector<int> support;
        for (int i = 0; i < n; ++i)
            if (rng() % 3 == 0)
                support.push_back(i);
        if (support.empty() || support[0] != 0)
            support.insert(support.begin(), 0);
        SparseSolution sol;
        sol.support = support;
        sol.coeffs = tt::random_complex_vector(rng, static_cast<int>(support.size()));
        const SubarrayLayout layout = extract_layout(sol, n);
        CHECK(layout.count() == static_cast<int>(support.size()));
        // runs partition 0..n-1
        int cursor = 0;
        for (const auto &run : layout.runs) {
            CHECK(run.first == cursor);
            cursor = run.last + 1;
        }
        CHECK(cursor == n);
    }
}
