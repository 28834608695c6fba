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

#include "subsynth/patterns.hpp"

#include <cmath>
#include <stdexcept>

#include "subsynth/errors.hpp"

namespace subsynth {

namespace {

// Chebyshev polynomial T_n evaluated anywhere on the real line.
double cheb_poly(int n, double x) {
    if (x > 1.0)
        return std::cosh(n * std::acosh(x));
    if (x < -1.0) {
        const double v = std::cosh(n * std::acosh(-x));
        return (n % 2 == 0) ? v : -v;
    }
    return std::cos(n * std::acos(x));
}

} // namespace

std::string to_string(PatternFamily family) {
    switch (family) {
    case PatternFamily::Chebyshev:
        return "chebyshev";
    case PatternFamily::Taylor:
        return "taylor";
    case PatternFamily::File:
        return "file";
    }
    return "chebyshev";
}

PatternFamily pattern_family_from_string(const std::string &name) {
    if (name == "chebyshev")
        return PatternFamily::Chebyshev;
    if (name == "taylor")
        return PatternFamily::Taylor;
    if (name == "file")
        return PatternFamily::File;
    throw std::invalid_argument("unknown pattern family: " + name);
}

RealVector chebyshev_excitations(int elements, double sll_db) {
    if (elements < 2)
        throw std::invalid_argument("chebyshev_excitations: need at least two elements");
    if (!(sll_db > 0.0))
        throw std::invalid_argument("chebyshev_excitations: sidelobe suppression must be positive");

    const int n = elements;
    const int order = n - 1;
    const double ratio = std::pow(10.0, sll_db / 20.0);
    const double x0 = std::cosh(std::acosh(ratio) / order);

    // The centered array polynomial equals T_{N-1}(x0 cos(psi/2)); sampling
    // it at psi_k = 2 pi k / N and inverting the DFT yields the weights.
    std::vector<double> samples(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        samples[static_cast<size_t>(k)] = cheb_poly(order, x0 * std::cos(pi * k / n));

    RealVector w(n);
    for (int i = 0; i < n; ++i) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const double phase = pi * k * order / n - 2.0 * pi * k * i / n;
            acc += samples[static_cast<size_t>(k)] * std::polar(1.0, phase);
        }
        w[i] = acc.real() / n;
    }

    // Enforce the exact symmetry the construction has up to roundoff.
    for (int i = 0; i < n / 2; ++i) {
        const double avg = 0.5 * (w[i] + w[n - 1 - i]);
        w[i] = avg;
        w[n - 1 - i] = avg;
    }
    if (w.sum() < 0.0)
        w = -w;

    const double peak = w.maxCoeff();
    if (!(peak > 0.0))
        throw GenerationError("chebyshev_excitations: degenerate taper");
    w /= peak;
    return w;
}

RealVector taylor_excitations(int elements, double sll_db, int nbar) {
    if (elements < 2)
        throw std::invalid_argument("taylor_excitations: need at least two elements");
    if (nbar < 1)
        throw std::invalid_argument("taylor_excitations: nbar must be at least 1");
    if (!(sll_db > 0.0))
        throw std::invalid_argument("taylor_excitations: sidelobe suppression must be positive");

    const int n = elements;
    if (nbar == 1)
        return RealVector::Ones(n);

    const double ratio = std::pow(10.0, sll_db / 20.0);
    const double a = std::acosh(ratio) / pi;
    const double a2 = a * a;
    const double sigma2 = static_cast<double>(nbar) * nbar / (a2 + (nbar - 0.5) * (nbar - 0.5));

    // Space-factor coefficients of the nbar line source.
    std::vector<double> sf(static_cast<size_t>(nbar), 0.0);
    for (int p = 1; p < nbar; ++p) {
        double lead = 1.0;
        for (int j = 1; j <= p; ++j)
            lead *= static_cast<double>(nbar - j) / static_cast<double>(nbar - 1 + j);
        double prod = 1.0;
        for (int m = 1; m < nbar; ++m) {
            const double z2 = sigma2 * (a2 + (m - 0.5) * (m - 0.5));
            prod *= 1.0 - static_cast<double>(p) * p / z2;
        }
        sf[static_cast<size_t>(p)] = lead * prod;
    }

    // Sample the aperture distribution at element centers; the aperture
    // length L = N * spacing cancels the spacing out of d_i / L.
    RealVector w(n);
    const double center = 0.5 * (n + 1);
    for (int i = 1; i <= n; ++i) {
        const double u = (i - center) / n;
        double val = 1.0;
        for (int p = 1; p < nbar; ++p)
            val += 2.0 * sf[static_cast<size_t>(p)] * std::cos(2.0 * pi * p * u);
        w[i - 1] = val;
    }

    const double peak = w.maxCoeff();
    if (!(peak > 0.0))
        throw GenerationError("taylor_excitations: degenerate taper");
    w /= peak;

    // A taper that turns back up toward the edges means nbar is too large
    // for the requested suppression.
    const int mid = (n - 1) / 2;
    for (int i = mid; i + 1 < n; ++i) {
        if (w[i + 1] > w[i] + 1e-9)
            throw GenerationError("taylor_excitations: non-monotonic taper (nbar too large for "
                                  "the requested sidelobe level)");
    }
    return w;
}

DesiredPattern make_desired(const PatternSpec &spec, const AngleGrid &grid) {
    switch (spec.family) {
    case PatternFamily::Chebyshev: {
        const RealVector w = chebyshev_excitations(spec.elements, spec.sll_db);
        const ArrayGeometry geom = ArrayGeometry::uniform(spec.elements, 0.5);
        return DesiredPattern(grid, evaluate_pattern(geom, w.cast<Complex>(), grid));
    }
    case PatternFamily::Taylor: {
        const RealVector w = taylor_excitations(spec.elements, spec.sll_db, spec.nbar);
        const ArrayGeometry geom = ArrayGeometry::uniform(spec.elements, 0.5);
        return DesiredPattern(grid, evaluate_pattern(geom, w.cast<Complex>(), grid));
    }
    case PatternFamily::File:
        return resample(load_pattern_file(spec.file), grid);
    }
    throw std::invalid_argument("make_desired: unknown pattern family");
}

} // namespace subsynth
