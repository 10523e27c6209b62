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

#include "ulasim/receiver.hpp"
#include "ulasim/errors.hpp"
#include "ulasim/ofdm.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ulasim;

namespace
{

// Builds an RxFrame whose antenna-r, block-m time samples come from
// per-(antenna, block) frequency symbols run through the modulator.
RxFrame frame_from_freq(const std::vector<std::vector<std::vector<cplx>>> &sym, int n_cp)
{
    const int n_rx = static_cast<int>(sym.size());
    const int n_blocks = static_cast<int>(sym[0].size());
    const int n_c = static_cast<int>(sym[0][0].size());
    RxFrame rx;
    rx.n_rx = n_rx;
    rx.n_blocks = n_blocks;
    rx.samples_per_block = n_c + n_cp;
    rx.samples.resize(static_cast<size_t>(n_blocks) * rx.samples_per_block * n_rx);
    for (int r = 0; r < n_rx; ++r)
        for (int m = 0; m < n_blocks; ++m)
        {
            const std::vector<cplx> t = modulate_block(sym[static_cast<size_t>(r)]
                                                           [static_cast<size_t>(m)],
                                                       n_cp);
            for (int j = 0; j < rx.samples_per_block; ++j)
                rx.at(r, m, j) = t[static_cast<size_t>(j)];
        }
    return rx;
}

} // namespace

TEST_CASE("frame demodulation recovers per-block frequency symbols")
{
    Rng rng(71);
    const int n_rx = 2, n_blocks = 3, n_c = 16, n_cp = 4;
    std::vector<std::vector<std::vector<cplx>>> sym(
        static_cast<size_t>(n_rx),
        std::vector<std::vector<cplx>>(static_cast<size_t>(n_blocks),
                                       std::vector<cplx>(static_cast<size_t>(n_c))));
    for (auto &per_rx : sym)
        for (auto &per_block : per_rx)
            for (auto &v : per_block)
                v = rng.cnormal();

    const RxFrame rx = frame_from_freq(sym, n_cp);
    const RxFreq rf = demodulate_frame(rx, n_cp);
    REQUIRE(rf.n_subcarriers == n_c);
    for (int r = 0; r < n_rx; ++r)
        for (int m = 0; m < n_blocks; ++m)
            for (int k = 0; k < n_c; ++k)
                CHECK(std::abs(rf.at(r, m, k) -
                               sym[static_cast<size_t>(r)][static_cast<size_t>(m)]
                                  [static_cast<size_t>(k)]) < 1e-12);
}

TEST_CASE("LS estimation divides by the training symbols")
{
    Rng rng(73);
    const int n_rx = 2, n_c = 8;
    std::vector<cplx> training(static_cast<size_t>(n_c));
    for (int k = 0; k < n_c; ++k)
        training[static_cast<size_t>(k)] = std::polar(1.0, rng.angle());

    std::vector<cplx> h(static_cast<size_t>(n_rx * n_c));
    for (auto &v : h)
        v = rng.cnormal();

    RxFreq rf;
    rf.n_rx = n_rx;
    rf.n_blocks = 1;
    rf.n_subcarriers = n_c;
    rf.sym.resize(static_cast<size_t>(n_rx * n_c));
    for (int r = 0; r < n_rx; ++r)
        for (int k = 0; k < n_c; ++k)
            rf.sym[(0 * static_cast<size_t>(n_rx) + r) * n_c + k] =
                h[static_cast<size_t>(r * n_c + k)] * training[static_cast<size_t>(k)];

    const ChannelEstimate est = ls_estimate(rf, training);
    for (int r = 0; r < n_rx; ++r)
        for (int k = 0; k < n_c; ++k)
            CHECK(std::abs(est.at(r, k) - h[static_cast<size_t>(r * n_c + k)]) < 1e-13);

    std::vector<cplx> bad = training;
    bad[3] = 0.0;
    CHECK_THROWS_AS(ls_estimate(rf, bad), ZeroTrainingSymbol);
    CHECK_THROWS_AS(ls_estimate(rf, std::vector<cplx>(5, cplx(1, 0))),
                    DimensionMismatch);
}

TEST_CASE("MRC combining matches the weighted-sum definition")
{
    Rng rng(75);
    const int n_rx = 3, n_c = 4, n_blocks = 3;
    ChannelEstimate est;
    est.n_rx = n_rx;
    est.n_subcarriers = n_c;
    est.h.resize(static_cast<size_t>(n_rx * n_c));
    for (auto &v : est.h)
        v = rng.cnormal();

    RxFreq rf;
    rf.n_rx = n_rx;
    rf.n_blocks = n_blocks;
    rf.n_subcarriers = n_c;
    rf.sym.resize(static_cast<size_t>(n_blocks * n_rx * n_c));
    for (auto &v : rf.sym)
        v = rng.cnormal();

    const DetectionResult det = mrc_detect(rf, est);
    REQUIRE(det.n_data_blocks == n_blocks - 1);
    for (int md = 0; md < det.n_data_blocks; ++md)
        for (int k = 0; k < n_c; ++k)
        {
            cplx num = 0.0;
            double den = 0.0;
            for (int r = 0; r < n_rx; ++r)
            {
                num += std::conj(est.at(r, k)) * rf.at(r, md + 1, k);
                den += std::norm(est.at(r, k));
            }
            CHECK(std::abs(det.symbols[static_cast<size_t>(md * n_c + k)] - num / den) <
                  1e-13);
            CHECK(det.erased[static_cast<size_t>(k)] == 0);
        }
}

TEST_CASE("degenerate subcarriers are erased and counted as errors")
{
    const int n_rx = 2, n_c = 3;
    ChannelEstimate est;
    est.n_rx = n_rx;
    est.n_subcarriers = n_c;
    est.h.assign(static_cast<size_t>(n_rx * n_c), cplx(1.0, 0.0));
    est.h[1] = 0.0; // subcarrier 1 dead on both antennas
    est.h[static_cast<size_t>(n_c) + 1] = 0.0;

    RxFreq rf;
    rf.n_rx = n_rx;
    rf.n_blocks = 2;
    rf.n_subcarriers = n_c;
    const cplx ref = qam16_constellation()[0];
    rf.sym.assign(static_cast<size_t>(2 * n_rx * n_c), ref);

    const DetectionResult det = mrc_detect(rf, est);
    CHECK(det.erased[0] == 0);
    CHECK(det.erased[1] == 1);
    CHECK(det.symbols[1] == cplx(0.0, 0.0));

    const auto [errors, total] = count_ser(det, std::vector<cplx>(3, ref));
    CHECK(total == 3);
    CHECK(errors == 1); // only the erased subcarrier

    CHECK_THROWS_AS(count_ser(det, std::vector<cplx>(5, ref)), DimensionMismatch);
}

TEST_CASE("symbol errors are counted against the slicer decision")
{
    const int n_c = 4;
    DetectionResult det;
    det.n_data_blocks = 1;
    det.n_subcarriers = n_c;
    det.erased.assign(static_cast<size_t>(n_c), 0);
    const auto &pts = qam16_constellation();
    det.symbols = {pts[0] + cplx(0.05, 0.05), pts[3], pts[5] + cplx(0.02, -0.07),
                   pts[9]};
    const std::vector<cplx> ref = {pts[0], pts[3], pts[7], pts[9]};
    const auto [errors, total] = count_ser(det, ref);
    CHECK(total == 4);
    CHECK(errors == 1); // only index 2 decodes away from its reference
}

TEST_CASE("a static two-tap channel produces the closed-form frequency response")
{
    // Known taps h0, h1 at delays 0 and d with d <= CP: after the receiver
    // chain the LS estimate must equal h0 + h1 e^{-2 pi i k d / N}.
    Rng rng(77);
    const int n_c = 16, n_cp = 5, d = 3;
    const cplx h0(0.8, -0.3), h1(-0.2, 0.45);

    std::vector<cplx> training(static_cast<size_t>(n_c));
    for (int k = 0; k < n_c; ++k)
        training[static_cast<size_t>(k)] = std::polar(1.0, rng.angle());

    const std::vector<cplx> t0 = modulate_block(training, n_cp);
    RxFrame rx;
    rx.n_rx = 1;
    rx.n_blocks = 1;
    rx.samples_per_block = n_c + n_cp;
    rx.samples.assign(static_cast<size_t>(n_c + n_cp), cplx(0.0, 0.0));
    for (int j = 0; j < n_c + n_cp; ++j)
    {
        cplx y = h0 * t0[static_cast<size_t>(j)];
        // the prefix absorbs what the previous block would contribute, and
        // those d samples never reach the DFT, so skipping them is exact
        if (j >= d)
            y += h1 * t0[static_cast<size_t>(j - d)];
        rx.at(0, 0, j) = y;
    }

    const RxFreq rf = demodulate_frame(rx, n_cp);
    const ChannelEstimate est = ls_estimate(rf, training);
    for (int k = 0; k < n_c; ++k)
    {
        const cplx expect =
            h0 + h1 * std::polar(1.0, -2.0 * Rng::pi * static_cast<double>(k) * d / n_c);
        CHECK(std::abs(est.at(0, k) - expect) < 1e-12);
    }
}

TEST_CASE("unitary demodulation preserves noise variance")
{
    Rng rng(79);
    const int n_c = 64, n_cp = 16, n_blocks = 40;
    RxFrame rx;
    rx.n_rx = 1;
    rx.n_blocks = n_blocks;
    rx.samples_per_block = n_c + n_cp;
    rx.samples.resize(static_cast<size_t>(n_blocks) * (n_c + n_cp));
    const double sigma2 = 0.25;
    for (auto &v : rx.samples)
        v = std::sqrt(sigma2) * rng.cnormal();

    const RxFreq rf = demodulate_frame(rx, n_cp);
    double p = 0.0;
    for (const cplx &v : rf.sym)
        p += std::norm(v);
    p /= static_cast<double>(rf.sym.size());
    const double n = static_cast<double>(rf.sym.size());
    CHECK(std::abs(p - sigma2) < 3.0 * sigma2 / std::sqrt(n));
}
