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

#ifndef ULASIM_OFDM_HPP
#define ULASIM_OFDM_HPP

#include "ulasim/config.hpp"
#include "ulasim/rng.hpp"

#include <array>
#include <complex>
#include <vector>

namespace ulasim
{

using cplx = std::complex<double>;

// One frame: N_b blocks of N_c frequency-domain symbols and their
// time-domain samples with cyclic prefix. Block 0 carries the training
// symbols, blocks 1..N_b-1 carry data. Time sample j of a block corresponds
// to n = j - n_cp, so the prefix occupies j = 0..n_cp-1.
struct OfdmFrame
{
    int n_blocks = 0;
    int n_subcarriers = 0;
    int n_cp = 0;

    std::vector<cplx> freq_symbols; // [m * n_subcarriers + k]
    std::vector<cplx> time_samples; // [m * (n_cp + n_subcarriers) + j]

    int samples_per_block() const { return n_subcarriers + n_cp; }
    cplx freq(int m, int k) const { return freq_symbols[static_cast<size_t>(m) * n_subcarriers + k]; }
    cplx time(int m, int j) const
    {
        return time_samples[static_cast<size_t>(m) * samples_per_block() + j];
    }
};

// Gray-mapped 16-QAM with unit average symbol energy; per-axis levels
// {-3, -1, +1, +3} / sqrt(10), bit pairs Gray-coded per axis.
const std::array<cplx, 16> &qam16_constellation();

// Maps 4 bits per symbol (I pair then Q pair). Throws BadLength unless the
// bit count is a multiple of 4.
std::vector<cplx> qam16_map(const std::vector<int> &bits);

// Hard nearest-neighbor decision back to bits; inverse of qam16_map in the
// noiseless case.
std::vector<int> qam16_demap(const std::vector<cplx> &symbols);

// Nearest constellation point (per-axis slicing).
cplx qam16_slice(cplx v);

// Unitary N-point transforms (1/sqrt(N) scaling both ways).
std::vector<cplx> dft_unitary(const std::vector<cplx> &x);
std::vector<cplx> idft_unitary(const std::vector<cplx> &x);

// s(n) = (1/sqrt(N_c)) sum_k x_k exp(j 2 pi k n / N_c) for n = -n_cp..N_c-1,
// returned with the prefix first (output index j maps to n = j - n_cp).
std::vector<cplx> modulate_block(const std::vector<cplx> &x, int n_cp);

// Drops the first n_cp samples and applies the unitary DFT.
std::vector<cplx> demodulate_block(const std::vector<cplx> &y, int n_cp);

// Builds a frame from the given symbol stream: block 0 is unit-magnitude
// QPSK-like training on every subcarrier, the rest are random 16-QAM data.
OfdmFrame build_frame(const ValidatedConfig &config, Rng &rng);

} // namespace ulasim

#endif
