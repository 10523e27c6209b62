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

#include "ulasim/ofdm.hpp"
#include "ulasim/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace ulasim;

namespace
{

// Definition-based DFT oracle, O(N^2).
std::vector<cplx> dft_slow(const std::vector<cplx> &x)
{
    const size_t n = x.size();
    std::vector<cplx> out(n);
    for (size_t k = 0; k < n; ++k)
    {
        cplx acc = 0.0;
        for (size_t j = 0; j < n; ++j)
            acc += x[j] * std::polar(1.0, -2.0 * Rng::pi *
                                              static_cast<double>(k * j % n) /
                                              static_cast<double>(n));
        out[k] = acc / std::sqrt(static_cast<double>(n));
    }
    return out;
}

double max_abs_diff(const std::vector<cplx> &a, const std::vector<cplx> &b)
{
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("constellation has unit average energy and Gray-coded axes")
{
    const auto &pts = qam16_constellation();
    double energy = 0.0;
    for (const cplx &p : pts)
        energy += std::norm(p);
    CHECK(energy / 16.0 == doctest::Approx(1.0).epsilon(1e-14));

    // per-axis levels are +-1/sqrt(10), +-3/sqrt(10)
    const double s = 1.0 / std::sqrt(10.0);
    for (const cplx &p : pts)
    {
        const double re = std::abs(p.real()) / s;
        const double im = std::abs(p.imag()) / s;
        CHECK((std::abs(re - 1.0) < 1e-12 || std::abs(re - 3.0) < 1e-12));
        CHECK((std::abs(im - 1.0) < 1e-12 || std::abs(im - 3.0) < 1e-12));
    }

    // Gray property: the bit pairs of adjacent amplitude levels differ in
    // exactly one bit on each axis
    std::vector<int> bits_by_level(4);
    for (int hi = 0; hi < 2; ++hi)
        for (int lo = 0; lo < 2; ++lo)
        {
            std::vector<cplx> sym = qam16_map({hi, lo, 0, 0});
            const int level = static_cast<int>(std::lround(sym[0].real() / s));
            bits_by_level[static_cast<size_t>((level + 3) / 2)] = (hi << 1) | lo;
        }
    for (int i = 0; i + 1 < 4; ++i)
    {
        const int delta = bits_by_level[static_cast<size_t>(i)] ^
                          bits_by_level[static_cast<size_t>(i + 1)];
        CHECK((delta == 1 || delta == 2)); // power of two = single bit flip
        CHECK((delta & (delta - 1)) == 0);
    }
}

TEST_CASE("map/demap round-trips every symbol and slice is idempotent")
{
    std::vector<int> bits;
    for (int v = 0; v < 16; ++v)
        for (int b = 3; b >= 0; --b)
            bits.push_back((v >> b) & 1);
    const std::vector<cplx> symbols = qam16_map(bits);
    REQUIRE(symbols.size() == 16);
    CHECK(qam16_demap(symbols) == bits);
    for (const cplx &p : symbols)
    {
        CHECK(qam16_slice(p) == p);
        CHECK(qam16_slice(p + cplx(0.08, -0.05)) == p); // inside decision region
    }
    CHECK_THROWS_AS(qam16_map({1, 0, 1}), BadLength);
}

TEST_CASE("unitary transforms match the definition and preserve energy")
{
    Rng rng(11);
    std::vector<cplx> x(16);
    for (auto &v : x)
        v = rng.cnormal();

    const std::vector<cplx> f = dft_unitary(x);
    CHECK(max_abs_diff(f, dft_slow(x)) < 1e-12);

    const std::vector<cplx> back = idft_unitary(f);
    CHECK(max_abs_diff(back, x) < 1e-12);

    double ex = 0.0, ef = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
    {
        ex += std::norm(x[i]);
        ef += std::norm(f[i]);
    }
    CHECK(ex == doctest::Approx(ef).epsilon(1e-13));
}

TEST_CASE("cyclic prefix copies the block tail ahead of the body")
{
    Rng rng(13);
    std::vector<cplx> sym(8);
    for (auto &v : sym)
        v = rng.cnormal();
    const int n_cp = 3;
    const std::vector<cplx> block = modulate_block(sym, n_cp);
    REQUIRE(block.size() == 8 + 3);
    const std::vector<cplx> body = idft_unitary(sym);
    for (int j = 0; j < n_cp; ++j)
        CHECK(block[static_cast<size_t>(j)] == body[static_cast<size_t>(8 - n_cp + j)]);
    for (int j = 0; j < 8; ++j)
        CHECK(block[static_cast<size_t>(n_cp + j)] == body[static_cast<size_t>(j)]);

    CHECK_THROWS_AS(modulate_block({}, 0), BadLength);
    CHECK_THROWS_AS(modulate_block(sym, 9), BadLength);
    CHECK_THROWS_AS(demodulate_block(std::vector<cplx>(3), 3), BadLength);
}

TEST_CASE("demodulation inverts modulation")
{
    Rng rng(17);
    std::vector<cplx> sym(32);
    for (auto &v : sym)
        v = rng.cnormal();
    const std::vector<cplx> rtrip = demodulate_block(modulate_block(sym, 8), 8);
    CHECK(max_abs_diff(rtrip, sym) < 1e-12);
}

TEST_CASE("a circular delay within the prefix becomes a per-subcarrier phase")
{
    // Static single-tap channel with delay d: y(j) = s(j - d). After prefix
    // removal and the DFT, Y_k = e^{-2 pi i k d / N} X_k. This exercises the
    // whole prefix mechanism against the closed form.
    Rng rng(19);
    const int n_c = 16, n_cp = 5, d = 4;
    std::vector<cplx> sym(static_cast<size_t>(n_c));
    for (auto &v : sym)
        v = rng.cnormal();
    const std::vector<cplx> block = modulate_block(sym, n_cp);

    // previous block's tail would occupy j < d; the prefix absorbs it, and
    // those samples never reach the DFT, so zeros are fine here
    std::vector<cplx> delayed(block.size(), cplx(0.0, 0.0));
    for (size_t j = static_cast<size_t>(d); j < block.size(); ++j)
        delayed[j] = block[j - static_cast<size_t>(d)];

    const std::vector<cplx> rx = demodulate_block(delayed, n_cp);
    for (int k = 0; k < n_c; ++k)
    {
        const cplx expect =
            sym[static_cast<size_t>(k)] *
            std::polar(1.0, -2.0 * Rng::pi * static_cast<double>(k) * d / n_c);
        CHECK(std::abs(rx[static_cast<size_t>(k)] - expect) < 1e-12);
    }
}

TEST_CASE("frames carry unit-magnitude training and constellation data")
{
    SimulationConfig cfg;
    cfg.n_subcarriers = 32;
    cfg.n_cp = 8;
    cfg.n_blocks = 4;
    cfg.n_taps = 2;
    cfg.tap_delays = {0, 5};
    cfg.tap_powers = {0.5, 0.5};
    ValidatedConfig v = validate(cfg);
    Rng rng(21);
    const OfdmFrame frame = build_frame(v, rng);

    REQUIRE(frame.n_blocks == 4);
    REQUIRE(frame.freq_symbols.size() == static_cast<size_t>(4 * 32));
    REQUIRE(frame.time_samples.size() == static_cast<size_t>(4 * 40));

    for (int k = 0; k < 32; ++k)
    {
        const cplx t = frame.freq(0, k);
        CHECK(std::abs(std::abs(t) - 1.0) < 1e-12);
        // phase is pi/4 + q pi/2: both parts +-1/sqrt(2)
        CHECK(std::abs(std::abs(t.real()) - std::sqrt(0.5)) < 1e-12);
        CHECK(std::abs(std::abs(t.imag()) - std::sqrt(0.5)) < 1e-12);
    }
    for (int m = 1; m < 4; ++m)
        for (int k = 0; k < 32; ++k)
            CHECK(qam16_slice(frame.freq(m, k)) == frame.freq(m, k));

    // time samples agree with modulate_block applied per block
    for (int m = 0; m < 4; ++m)
    {
        std::vector<cplx> sym(32);
        for (int k = 0; k < 32; ++k)
            sym[static_cast<size_t>(k)] = frame.freq(m, k);
        const std::vector<cplx> block = modulate_block(sym, 8);
        for (int j = 0; j < 40; ++j)
            CHECK(std::abs(frame.time(m, j) - block[static_cast<size_t>(j)]) < 1e-13);
    }

    // deterministic rebuild
    Rng rng2(21);
    const OfdmFrame again = build_frame(v, rng2);
    CHECK(frame.freq_symbols == again.freq_symbols);
    CHECK(frame.time_samples == again.time_samples);
}
