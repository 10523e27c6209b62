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

#ifndef ULASIM_TXFRONTEND_HPP
#define ULASIM_TXFRONTEND_HPP

#include "ulasim/channel.hpp"
#include "ulasim/config.hpp"
#include "ulasim/ofdm.hpp"
#include "ulasim/rng.hpp"

#include <complex>
#include <vector>

namespace ulasim
{

// Q-branch match-filter beamforming network. Row i of `weights` is
// w(theta_i) = eta * a_t(theta_i) * exp(j phi'_i) with a single shared eta
// chosen so that || sum_i a_t(theta_i) exp(j phi'_i) || = 1 after scaling.
// The random branch phases make the composite channel wide-sense stationary.
struct BeamformingNetwork
{
    BeamGrid grid;
    std::vector<double> branch_phases; // phi'_i, [0, 2 pi)
    std::vector<cplx> weights;         // [i * n_tx + t]
    double norm_eta = 0.0;
    int n_tx = 0;

    int n_branches() const { return static_cast<int>(grid.angles.size()); }
    cplx weight(int i, int t) const { return weights[static_cast<size_t>(i) * n_tx + t]; }
};

// Per-antenna transmit samples for a whole frame, laid out so that the
// vector across antennas at one time instant is contiguous:
// samples[t_global * n_tx + antenna], t_global = m * N_s + j.
struct TxWaveform
{
    int n_tx = 0;
    int n_blocks = 0;
    int samples_per_block = 0;
    std::vector<cplx> samples;

    cplx at(int antenna, int m, int j) const
    {
        return samples[(static_cast<size_t>(m) * samples_per_block + j) * n_tx + antenna];
    }
};

// Draws the Q branch phases from `rng` and assembles the weight matrix.
BeamformingNetwork build_network(const ValidatedConfig &config, const BeamGrid &grid,
                                 Rng &rng);

// Doppler pre-compensation for one branch: multiplies sample j (block-local,
// j = 0 is the first prefix sample) by exp(-j omega_d cos(theta_i) u T_s)
// where u = m*N_s + j - n_cp is the frame-global index of the sample with
// the block body starting at u = m*N_s. Magnitude-preserving.
std::vector<cplx> precompensate(const std::vector<cplx> &block_samples,
                                double branch_angle, int block_m, double f_d,
                                double sample_interval, int n_s, int n_cp);

// Antenna-domain superposition of all pre-compensated branches:
// x(t) = sum_i conj(w(theta_i)) * s_i(t). Branches are summed in fixed grid
// order for reproducibility. Throws DimensionMismatch when the network and
// config antenna counts differ.
TxWaveform compose_waveform(const OfdmFrame &frame, const BeamformingNetwork &network,
                            const ValidatedConfig &config);

} // namespace ulasim

#endif
