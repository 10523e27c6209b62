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

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace ulasim
{

namespace
{

// Per-axis Gray code: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (scaled).
constexpr double qam_scale = 0.31622776601683794; // 1/sqrt(10)

double gray_level(int b_hi, int b_lo)
{
    // Gray order 00, 01, 11, 10 -> -3, -1, +1, +3; table indexed by (b_hi<<1)|b_lo.
    static const double lut[4] = {-3.0, -1.0, +3.0, +1.0};
    return lut[(b_hi << 1) | b_lo] * qam_scale;
}

void gray_bits(double level, int &b_hi, int &b_lo)
{
    int idx = static_cast<int>(std::lround((level / qam_scale + 3.0) / 2.0));
    idx = std::clamp(idx, 0, 3);
    static const int idx_to_gray[4] = {0, 1, 3, 2};
    int g = idx_to_gray[idx];
    b_hi = (g >> 1) & 1;
    b_lo = g & 1;
}

Eigen::FFT<double> &fft_engine()
{
    static thread_local Eigen::FFT<double> fft;
    return fft;
}

} // namespace

const std::array<cplx, 16> &qam16_constellation()
{
    static const std::array<cplx, 16> points = [] {
        std::array<cplx, 16> p;
        for (int b = 0; b < 16; ++b)
            p[static_cast<size_t>(b)] = {gray_level((b >> 3) & 1, (b >> 2) & 1),
                                         gray_level((b >> 1) & 1, b & 1)};
        return p;
    }();
    return points;
}

std::vector<cplx> qam16_map(const std::vector<int> &bits)
{
    if (bits.size() % 4 != 0)
        throw BadLength("qam16_map needs a multiple of 4 bits, got " +
                        std::to_string(bits.size()));
    std::vector<cplx> out(bits.size() / 4);
    for (size_t s = 0; s < out.size(); ++s)
        out[s] = {gray_level(bits[4 * s], bits[4 * s + 1]),
                  gray_level(bits[4 * s + 2], bits[4 * s + 3])};
    return out;
}

std::vector<int> qam16_demap(const std::vector<cplx> &symbols)
{
    std::vector<int> bits(symbols.size() * 4);
    for (size_t s = 0; s < symbols.size(); ++s)
    {
        cplx p = qam16_slice(symbols[s]);
        int b0, b1, b2, b3;
        gray_bits(p.real(), b0, b1);
        gray_bits(p.imag(), b2, b3);
        bits[4 * s] = b0;
        bits[4 * s + 1] = b1;
        bits[4 * s + 2] = b2;
        bits[4 * s + 3] = b3;
    }
    return bits;
}

cplx qam16_slice(cplx v)
{
    auto slice_axis = [](double x) {
        int idx = static_cast<int>(std::lround((x / qam_scale + 3.0) / 2.0));
        idx = std::clamp(idx, 0, 3);
        return (2.0 * idx - 3.0) * qam_scale;
    };
    return {slice_axis(v.real()), slice_axis(v.imag())};
}

std::vector<cplx> dft_unitary(const std::vector<cplx> &x)
{
    std::vector<cplx> out;
    fft_engine().fwd(out, x);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto &v : out)
        v *= s;
    return out;
}

std::vector<cplx> idft_unitary(const std::vector<cplx> &x)
{
    std::vector<cplx> out;
    fft_engine().inv(out, x); // includes 1/N
    const double s = std::sqrt(static_cast<double>(x.size()));
    for (auto &v : out)
        v *= s;
    return out;
}

std::vector<cplx> modulate_block(const std::vector<cplx> &x, int n_cp)
{
    const int n_c = static_cast<int>(x.size());
    if (n_c < 1)
        throw BadLength("modulate_block: empty symbol vector");
    if (n_cp < 0 || n_cp > n_c)
        throw BadLength("modulate_block: n_cp must lie in [0, N_c]");
    std::vector<cplx> body = idft_unitary(x);
    std::vector<cplx> out(static_cast<size_t>(n_c + n_cp));
    // prefix: s(-n) = s(N_c - n), so output j < n_cp copies body[N_c - n_cp + j]
    for (int j = 0; j < n_cp; ++j)
        out[static_cast<size_t>(j)] = body[static_cast<size_t>(n_c - n_cp + j)];
    std::copy(body.begin(), body.end(), out.begin() + n_cp);
    return out;
}

std::vector<cplx> demodulate_block(const std::vector<cplx> &y, int n_cp)
{
    if (static_cast<int>(y.size()) <= n_cp)
        throw BadLength("demodulate_block: fewer samples than the prefix length");
    std::vector<cplx> body(y.begin() + n_cp, y.end());
    return dft_unitary(body);
}

OfdmFrame build_frame(const ValidatedConfig &config, Rng &rng)
{
    const int n_c = config.cfg.n_subcarriers;
    const int n_cp = config.cfg.n_cp;
    const int n_b = config.cfg.n_blocks;

    OfdmFrame frame;
    frame.n_blocks = n_b;
    frame.n_subcarriers = n_c;
    frame.n_cp = n_cp;
    frame.freq_symbols.resize(static_cast<size_t>(n_b) * n_c);
    frame.time_samples.resize(static_cast<size_t>(n_b) * (n_c + n_cp));

    std::vector<cplx> block(static_cast<size_t>(n_c));
    for (int m = 0; m < n_b; ++m)
    {
        if (m == 0)
        {
            // unit-magnitude QPSK-like training keeps the LS division
            // well-conditioned on every subcarrier
            for (int k = 0; k < n_c; ++k)
            {
                int q = static_cast<int>(rng.next_u64() & 3);
                double ph = Rng::pi / 4.0 + q * Rng::pi / 2.0;
                block[static_cast<size_t>(k)] = {std::cos(ph), std::sin(ph)};
            }
        }
        else
        {
            for (int k = 0; k < n_c; ++k)
            {
                int b = static_cast<int>(rng.next_u64() & 15);
                block[static_cast<size_t>(k)] = qam16_constellation()[static_cast<size_t>(b)];
            }
        }
        std::copy(block.begin(), block.end(),
                  frame.freq_symbols.begin() + static_cast<size_t>(m) * n_c);
        std::vector<cplx> t = modulate_block(block, n_cp);
        std::copy(t.begin(), t.end(),
                  frame.time_samples.begin() + static_cast<size_t>(m) * (n_c + n_cp));
    }
    return frame;
}

} // namespace ulasim
