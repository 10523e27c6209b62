// SPDX-License-Identifier: Apache-2.0
//
// ulasim - link-level simulator for a high-mobility OFDM uplink with a large
// uniform linear transmit array
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

#include "ulasim/analysis.hpp"
#include "ulasim/errors.hpp"
#include "ulasim/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

using namespace ulasim;

namespace
{

constexpr double wd_1khz = 2.0 * Rng::pi * 1000.0;

// Independent fixed-resolution midpoint evaluation of the sidelobe angular
// integral after the same endpoint substitution, used as an oracle for the
// adaptive version inside spectral_constants.
double sidelobe_integral_oracle(double lo, double hi, double s, bool singular_at_hi)
{
    if (!(hi > lo))
        return 0.0;
    const int n = 200000;
    const double vmax = std::sqrt(hi - lo);
    const double h = vmax / n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
    {
        const double v = (k + 0.5) * h;
        const double theta = singular_at_hi ? hi - v * v : lo + v * v;
        const double c = std::cos(theta) - s;
        acc += 2.0 * v / std::sqrt(std::max(1.0 - c * c, 1e-300));
    }
    return acc * h;
}

} // namespace

TEST_CASE("array gain is 1 on the beam axis, bounded, and symmetric")
{
    CHECK(gain(0.7, 0.7, 128, 0.45) == 1.0);
    Rng rng(81);
    for (int i = 0; i < 200; ++i)
    {
        const double a = rng.uniform() * Rng::pi;
        const double b = rng.uniform() * Rng::pi;
        const double g = gain(a, b, 64, 0.45);
        CHECK(std::abs(g) <= 1.0 + 1e-12);
        CHECK(g == doctest::Approx(gain(b, a, 64, 0.45)).epsilon(1e-12));
    }
    // near-axis expansion stays continuous across the series/ratio switch
    const double eps = 2e-8 / (Rng::pi * 0.45);
    CHECK(gain(Rng::pi / 2, Rng::pi / 2 + eps, 512, 0.45) ==
          doctest::Approx(gain(Rng::pi / 2, Rng::pi / 2 + 2.0 * eps, 512, 0.45))
              .epsilon(1e-4));
}

TEST_CASE("closed Bessel series equals the definition quadrature")
{
    for (const int m : {8, 32})
    {
        const ConfigPoint pt{m, 0.45, wd_1khz};
        const std::vector<double> taus = {0.0, 1e-4, 3e-4, 1e-3};
        const auto quad = autocorrelation_batch(taus, pt);
        const double r0 = autocorrelation_series(0.0, pt);
        REQUIRE(r0 > 0.0);
        for (size_t i = 0; i < taus.size(); ++i)
        {
            const double series = autocorrelation_series(taus[i], pt);
            CHECK(std::abs(quad[i].imag()) < 1e-8 * r0);
            CHECK(std::abs(quad[i].real() - series) < 1e-6 * r0);
        }
    }
}

TEST_CASE("single-lag quadrature wrapper matches the batch")
{
    const ConfigPoint pt{16, 0.45, wd_1khz};
    const auto one = autocorrelation(2e-4, pt);
    const auto batch = autocorrelation_batch({2e-4}, pt);
    CHECK(one == batch[0]);
}

TEST_CASE("quadrature reports non-convergence instead of returning garbage")
{
    const ConfigPoint pt{512, 0.45, wd_1khz};
    CHECK_THROWS_AS(autocorrelation(1e-4, pt, 1e-15, 64, 128), QuadratureNotConverged);
}

TEST_CASE("spectral constants follow their defining formulas")
{
    const int m = 64;
    const double r = 0.45;
    const SpectralConstants c = spectral_constants(m, r, wd_1khz);
    const double ratio = m * r;

    const double delta_m = std::acos(1.0 - 1.0 / ratio);
    const double theta0 = std::asin(1.0 / (ratio * delta_m));
    CHECK(c.delta_m == doctest::Approx(delta_m).epsilon(1e-14));
    CHECK(c.theta0 == doctest::Approx(theta0).epsilon(1e-14));
    CHECK(c.c0 == doctest::Approx(8.0 * delta_m * theta0 / Rng::pi).epsilon(1e-14));
    CHECK(c.t0 == doctest::Approx(Rng::pi * ratio / wd_1khz).epsilon(1e-14));
    CHECK(c.c1 ==
          doctest::Approx(-(2.0 / wd_1khz) * std::log(std::tan(theta0 / 2.0)))
              .epsilon(1e-14));
    CHECK(c.w0 == doctest::Approx(wd_1khz / ratio).epsilon(1e-14));
    CHECK(c.w_bar0 == doctest::Approx(0.5 * c.w0).epsilon(1e-14));

    const double half = std::acos(1.0 - 0.5 / ratio);
    CHECK(c.theta_bar0 ==
          doctest::Approx(std::asin(0.5 / (ratio * half))).epsilon(1e-14));

    CHECK(c.i_max == static_cast<int>(std::floor(2.0 * ratio - 0.5)));
    CHECK(c.i_min == static_cast<int>(std::ceil(-2.0 * ratio - 0.5)));

    // indices cover i_min..i_max minus the two main-beam slots
    CHECK(static_cast<int>(c.sidelobes.size()) == c.i_max - c.i_min + 1 - 2);
    for (const SidelobeTerm &term : c.sidelobes)
    {
        CHECK(term.index != 0);
        CHECK(term.index != -1);
        const double s = (2.0 * term.index + 1.0) / (2.0 * ratio);
        CHECK(term.w_center == doctest::Approx(s * wd_1khz).epsilon(1e-12));
        const double level =
            1.0 / (m * std::sin((2.0 * term.index + 1.0) * Rng::pi / (2.0 * m)));
        CHECK(term.d_coef == doctest::Approx(level * level).epsilon(1e-12));
    }
}

TEST_CASE("sidelobe integrals agree with a fixed-grid oracle")
{
    const int m = 64;
    const double r = 0.45;
    const double ratio = m * r;
    const SpectralConstants c = spectral_constants(m, r, wd_1khz);

    for (const SidelobeTerm &term : c.sidelobes)
    {
        const double s = (2.0 * term.index + 1.0) / (2.0 * ratio);
        double expect;
        if (term.index >= 1)
            expect = sidelobe_integral_oracle(c.theta_bar0, std::acos(s - 1.0), s, true);
        else
            expect = sidelobe_integral_oracle(std::acos(s + 1.0),
                                              Rng::pi - c.theta_bar0, s, false);
        expect /= wd_1khz;
        CHECK(term.c_integral == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("constants reject geometrically impossible inputs")
{
    CHECK_THROWS_AS(spectral_constants(1, 0.3, wd_1khz), DomainError);
    CHECK_THROWS_AS(spectral_constants(0, 0.45, wd_1khz), DomainError);
    CHECK_THROWS_AS(spectral_constants(64, 0.45, 0.0), DomainError);
}

TEST_CASE("closed-form spread equals the moments of the closed-form spectrum")
{
    const SpectralConstants c = spectral_constants(128, 0.45, wd_1khz);
    const double sigma = doppler_spread_closed_form(c);

    const int n = (1 << 20) + 1;
    std::vector<double> grid(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        grid[static_cast<size_t>(j)] =
            -2.0 * wd_1khz + 4.0 * wd_1khz * j / (n - 1.0);
    const std::vector<double> psd = psd_closed_form(c, grid);
    const double sigma_moments = doppler_spread_numerical(psd, grid, c.c0);
    CHECK(sigma == doctest::Approx(sigma_moments).epsilon(1e-3));
}

TEST_CASE("spread integrator matches analytic moments of simple spectra")
{
    // flat band [-W, W]: sigma = W / sqrt(3)
    const double w = 100.0;
    const int n = 200001;
    std::vector<double> grid(static_cast<size_t>(n)), psd(static_cast<size_t>(n), 1.0);
    for (int j = 0; j < n; ++j)
        grid[static_cast<size_t>(j)] = -w + 2.0 * w * j / (n - 1.0);
    CHECK(doppler_spread_numerical(psd, grid) ==
          doctest::Approx(w / std::sqrt(3.0)).epsilon(1e-6));

    // all mass in the impulse: zero spread
    std::vector<double> zeros(static_cast<size_t>(n), 0.0);
    CHECK(doppler_spread_numerical(zeros, grid, 1.0) == 0.0);

    // no mass at all
    CHECK_THROWS_AS(doppler_spread_numerical(zeros, grid), ZeroTotalPower);
    CHECK_THROWS_AS(doppler_spread_numerical(psd, std::vector<double>(5, 0.0)),
                    DimensionMismatch);
}

TEST_CASE("the dense-scattering reference pipeline lands on omega_d over sqrt 2")
{
    const PsdCurve curve = psd_pipeline_jakes(wd_1khz);
    REQUIRE(curve.omega.size() == curve.psd.size());
    CHECK(curve.r0 == doctest::Approx(1.0).epsilon(1e-12));

    // restrict to |omega| <= 2 omega_d before taking moments
    std::vector<double> grid, psd;
    for (size_t j = 0; j < curve.omega.size(); ++j)
        if (std::abs(curve.omega[j]) <= 2.0 * wd_1khz)
        {
            grid.push_back(curve.omega[j]);
            psd.push_back(curve.psd[j]);
        }
    const double sigma = doppler_spread_numerical(psd, grid);
    CHECK(sigma == doctest::Approx(wd_1khz / std::sqrt(2.0)).epsilon(0.01));

    // classical U-shape: spectrum rises toward the band edge
    auto value_at = [&](double target) {
        size_t best = 0;
        for (size_t j = 0; j < grid.size(); ++j)
            if (std::abs(grid[j] - target) < std::abs(grid[best] - target))
                best = j;
        return psd[best];
    };
    CHECK(value_at(0.9 * wd_1khz) > value_at(0.3 * wd_1khz));
    CHECK(value_at(0.3 * wd_1khz) > 0.0);
}

TEST_CASE("equivalent-channel pipeline curve is symmetric and anchored at lag zero")
{
    const ConfigPoint pt{64, 0.45, wd_1khz};
    const PsdCurve curve = psd_pipeline(pt);
    REQUIRE(curve.omega.size() == curve.psd.size());
    REQUIRE(curve.omega.size() % 2 == 1);

    CHECK(curve.r0 == doctest::Approx(autocorrelation_series(0.0, pt)).epsilon(1e-12));

    const size_t mid = curve.omega.size() / 2;
    CHECK(curve.omega[mid] == 0.0);
    for (size_t j = 0; j < curve.omega.size(); ++j)
    {
        const size_t mirror = curve.omega.size() - 1 - j;
        CHECK(curve.omega[j] == doctest::Approx(-curve.omega[mirror]).epsilon(1e-12));
        CHECK(curve.psd[j] == doctest::Approx(curve.psd[mirror]).epsilon(1e-9));
    }

    // interpolation onto pipeline abscissae reproduces the pipeline exactly
    const std::vector<double> sub(curve.omega.begin() + 10, curve.omega.begin() + 40);
    const std::vector<double> interp = psd_numerical(pt, sub);
    for (size_t j = 0; j < sub.size(); ++j)
        CHECK(interp[j] == doctest::Approx(curve.psd[10 + j]).epsilon(1e-9));
}

TEST_CASE("spectrum reports are complete and serialize deterministically")
{
    const ConfigPoint pt{64, 0.45, wd_1khz};
    const SpectrumReport rep = make_spectrum_report(pt);
    REQUIRE(rep.omega_grid.size() == rep.psd_numerical.size());
    REQUIRE(rep.omega_grid.size() == rep.psd_closed_form.size());
    CHECK(rep.sigma_jakes == doctest::Approx(wd_1khz / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.sigma_ds_numerical > 0.0);
    CHECK(rep.sigma_ds_closed_form > 0.0);
    CHECK(rep.impulse_mass > 0.0);
    for (double w : rep.omega_grid)
        CHECK(std::abs(w) <= 2.0 * wd_1khz + 1e-9);

    std::ostringstream a, b;
    write_spectrum_csv(rep, a);
    write_spectrum_csv(make_spectrum_report(pt), b);
    CHECK(a.str() == b.str());

    // five comment rows, one header, one row per grid point
    size_t lines = 0;
    for (char ch : a.str())
        lines += (ch == '\n') ? 1 : 0;
    CHECK(lines == 6 + rep.omega_grid.size());
}
