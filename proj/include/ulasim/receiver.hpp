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

#ifndef ULASIM_RECEIVER_HPP
#define ULASIM_RECEIVER_HPP

#include "ulasim/link.hpp"
#include "ulasim/ofdm.hpp"

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace ulasim
{

// Demodulated frame: per antenna and block, the N_c frequency-domain symbols.
struct RxFreq
{
    int n_rx = 0;
    int n_blocks = 0;
    int n_subcarriers = 0;
    std::vector<cplx> sym; // [(m * n_rx + r) * n_subcarriers + k]

    cplx at(int antenna, int m, int k) const
    {
        return sym[(static_cast<size_t>(m) * n_rx + antenna) * n_subcarriers + k];
    }
};

// CP removal + unitary DFT for every antenna and block.
RxFreq demodulate_frame(const RxFrame &rx, int n_cp);

// Per-antenna, per-subcarrier frequency response estimated from block 0.
struct ChannelEstimate
{
    int n_rx = 0;
    int n_subcarriers = 0;
    std::vector<cplx> h; // [antenna * n_subcarriers + k]

    cplx at(int antenna, int k) const
    {
        return h[static_cast<size_t>(antenna) * n_subcarriers + k];
    }
};

// Least-squares estimate h[r,k] = Y0[r,k] / X0[k] from the training block.
// Throws ZeroTrainingSymbol if any training symbol is exactly 0.
ChannelEstimate ls_estimate(const RxFreq &rx, const std::vector<cplx> &training_symbols);

// Maximum-ratio combining across antennas for the data blocks 1..N_b-1:
// xhat[m,k] = sum_r conj(h[r,k]) Y[m,r,k] / sum_r |h[r,k]|^2. Subcarriers
// whose combining denominator underflows (< 1e-30) are flagged erased rather
// than divided.
struct DetectionResult
{
    int n_data_blocks = 0;
    int n_subcarriers = 0;
    std::vector<cplx> symbols;        // [m_data * n_subcarriers + k]
    std::vector<std::uint8_t> erased; // per subcarrier, 1 = degenerate
};

DetectionResult mrc_detect(const RxFreq &rx, const ChannelEstimate &est);

// Nearest-neighbor slicing against the reference symbols. Every symbol on an
// erased subcarrier counts as an error. Returns (errors, total).
std::pair<long, long> count_ser(const DetectionResult &det,
                                const std::vector<cplx> &reference_symbols);

} // namespace ulasim

#endif
