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

#include "ulasim/txfrontend.hpp"
#include "ulasim/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ulasim
{

BeamformingNetwork build_network(const ValidatedConfig &config, const BeamGrid &grid,
                                 Rng &rng)
{
    const int q = static_cast<int>(grid.angles.size());
    const int n_tx = config.cfg.n_tx;

    BeamformingNetwork net;
    net.grid = grid;
    net.n_tx = n_tx;
    net.branch_phases.resize(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i)
        net.branch_phases[static_cast<size_t>(i)] = rng.angle();

    net.weights.resize(static_cast<size_t>(q) * n_tx);
    std::vector<cplx> steer_sum(static_cast<size_t>(n_tx), cplx(0.0, 0.0));
    for (int i = 0; i < q; ++i)
    {
        const std::vector<cplx> a =
            tx_steering(grid.angles[static_cast<size_t>(i)], n_tx,
                        config.cfg.tx_spacing_wavelengths);
        const cplx rot = std::polar(1.0, net.branch_phases[static_cast<size_t>(i)]);
        for (int t = 0; t < n_tx; ++t)
        {
            const cplx v = a[static_cast<size_t>(t)] * rot;
            net.weights[static_cast<size_t>(i) * n_tx + t] = v;
            steer_sum[static_cast<size_t>(t)] += v;
        }
    }

    double norm2 = 0.0;
    for (const cplx &v : steer_sum)
        norm2 += std::norm(v);
    net.norm_eta = 1.0 / std::sqrt(norm2);
    for (cplx &w : net.weights)
        w *= net.norm_eta;
    return net;
}

std::vector<cplx> precompensate(const std::vector<cplx> &block_samples,
                                double branch_angle, int block_m, double f_d,
                                double sample_interval, int n_s, int n_cp)
{
    std::vector<cplx> out(block_samples.size());
    const double rate = -2.0 * Rng::pi * f_d * std::cos(branch_angle) * sample_interval;
    for (size_t j = 0; j < block_samples.size(); ++j)
    {
        const double u = static_cast<double>(block_m) * n_s +
                         static_cast<double>(j) - n_cp;
        out[j] = block_samples[j] * std::polar(1.0, rate * u);
    }
    return out;
}

TxWaveform compose_waveform(const OfdmFrame &frame, const BeamformingNetwork &network,
                            const ValidatedConfig &config)
{
    if (network.n_tx != config.cfg.n_tx)
        throw DimensionMismatch("network antenna count differs from config");
    const int n_tx = network.n_tx;
    const int q = network.n_branches();
    const int n_s = frame.samples_per_block();
    const int n_b = frame.n_blocks;
    const long total = static_cast<long>(n_b) * n_s;

    // conj(w) arranged antennas x branches
    Eigen::MatrixXcd wc(n_tx, q);
    for (int i = 0; i < q; ++i)
        for (int t = 0; t < n_tx; ++t)
            wc(t, i) = std::conj(network.weight(i, t));

    // branch signals: s_m(j) rotated by each branch's compensation phase
    Eigen::MatrixXcd branch(q, total);
    const double wd_ts = config.omega_d * config.sample_interval;
    for (int i = 0; i < q; ++i)
    {
        const double rate = -wd_ts * std::cos(network.grid.angles[static_cast<size_t>(i)]);
        for (long tg = 0; tg < total; ++tg)
        {
            const double u = static_cast<double>(tg) - config.cfg.n_cp;
            branch(i, tg) =
                frame.time_samples[static_cast<size_t>(tg)] * std::polar(1.0, rate * u);
        }
    }

    TxWaveform tx;
    tx.n_tx = n_tx;
    tx.n_blocks = n_b;
    tx.samples_per_block = n_s;
    tx.samples.resize(static_cast<size_t>(total) * n_tx);
    Eigen::Map<Eigen::MatrixXcd> x(tx.samples.data(), n_tx, total);
    x.noalias() = wc * branch;
    return tx;
}

} // namespace ulasim
