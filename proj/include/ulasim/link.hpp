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

#ifndef ULASIM_LINK_HPP
#define ULASIM_LINK_HPP

#include "ulasim/channel.hpp"
#include "ulasim/config.hpp"
#include "ulasim/rng.hpp"
#include "ulasim/txfrontend.hpp"

#include <complex>
#include <vector>

namespace ulasim
{

// Received samples per antenna, block and sample, plus the complex noise
// power that was added (0 when the SNR flag is +inf).
struct RxFrame
{
    int n_rx = 0;
    int n_blocks = 0;
    int samples_per_block = 0;
    std::vector<cplx> samples; // [(m * N_s + j) * n_rx + antenna]
    double noise_variance = 0.0;

    cplx at(int antenna, int m, int j) const
    {
        return samples[(static_cast<size_t>(m) * samples_per_block + j) * n_rx + antenna];
    }
    cplx &at(int antenna, int m, int j)
    {
        return samples[(static_cast<size_t>(m) * samples_per_block + j) * n_rx + antenna];
    }
};

// Noiseless reception: y_r(t) = sum_t' sum_l g_{r,t'}(l, u - d_l) x_{t'}(t - d_l)
// with u the frame-global sample index of t (body of block 0 starts at u = 0)
// and x = 0 before the frame begins. The per-path factorization
//   y_r(t) = sum_paths c_r(path) rot(path, u - d_l) [a_t(aod)^T x(t - d_l)]
// is algebraically identical to the antenna sum and costs O(paths) per sample
// instead of O(N_t * paths).
RxFrame propagate(const TxWaveform &tx, const ChannelRealization &chan,
                  const ValidatedConfig &config);

// Adds circularly-symmetric AWGN with variance sigma_z^2 = P_sig / 10^(snr/10),
// where P_sig is the mean |sample|^2 of the noiseless frame across all receive
// antennas. snr_db = +inf returns the input unchanged.
RxFrame add_awgn(const RxFrame &rx, double snr_db, Rng &rng);

} // namespace ulasim

#endif
