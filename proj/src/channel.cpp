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

#include "ulasim/channel.hpp"
#include "ulasim/errors.hpp"
#include "ulasim/util.hpp"

#include <cmath>

namespace ulasim
{

ChannelRealization draw_realization(const ValidatedConfig &config, const Rng &stream)
{
    const int n_taps = config.cfg.n_taps;
    const int n_paths = config.cfg.n_paths_per_tap;

    ChannelRealization chan;
    chan.paths.n_taps = n_taps;
    chan.paths.n_paths = n_paths;
    const size_t total = static_cast<size_t>(n_taps) * n_paths;
    chan.paths.alpha.resize(total);
    chan.paths.phi.resize(total);
    chan.paths.aod.resize(total);
    chan.paths.aoa.resize(total);

    for (int l = 0; l < n_taps; ++l)
    {
        const double a = std::sqrt(config.cfg.tap_powers[static_cast<size_t>(l)] / n_paths);
        for (int q = 0; q < n_paths; ++q)
        {
            Rng path_rng = stream.fork(static_cast<std::uint64_t>(l),
                                       static_cast<std::uint64_t>(q));
            const size_t i = chan.paths.idx(l, q);
            chan.paths.alpha[i] = a;
            chan.paths.phi[i] = path_rng.angle();
            chan.paths.aod[i] = path_rng.uniform() * Rng::pi;
            chan.paths.aoa[i] = path_rng.uniform() * Rng::pi;
        }
    }

    chan.tap_delays = config.cfg.tap_delays;
    chan.tx_spacing_wavelengths = config.cfg.tx_spacing_wavelengths;
    chan.rx_spacing_wavelengths = config.cfg.rx_spacing_wavelengths;
    chan.max_doppler_hz = config.cfg.max_doppler_hz;
    chan.sample_interval = config.sample_interval;
    return chan;
}

std::vector<cplx> tx_steering(double theta, int n_tx, double spacing_wavelengths)
{
    std::vector<cplx> a(static_cast<size_t>(n_tx));
    const double step = 2.0 * Rng::pi * spacing_wavelengths * std::cos(theta);
    for (int t = 0; t < n_tx; ++t)
        a[static_cast<size_t>(t)] = std::polar(1.0, step * t);
    return a;
}

cplx rx_phase(double theta_aoa, int rx_index, double spacing_wavelengths)
{
    return std::polar(1.0, 2.0 * Rng::pi * spacing_wavelengths * rx_index *
                               std::cos(theta_aoa));
}

cplx tap_gain(const ChannelRealization &chan, int l, long long n, int tx_index,
              int rx_index)
{
    const double omega_d = 2.0 * Rng::pi * chan.max_doppler_hz;
    const double t = static_cast<double>(n) * chan.sample_interval;
    cplx sum = 0.0;
    for (int q = 0; q < chan.paths.n_paths; ++q)
    {
        const size_t i = chan.paths.idx(l, q);
        const double phase =
            omega_d * t * std::cos(chan.paths.aod[i]) + chan.paths.phi[i] +
            2.0 * Rng::pi * chan.tx_spacing_wavelengths * tx_index *
                std::cos(chan.paths.aod[i]) +
            2.0 * Rng::pi * chan.rx_spacing_wavelengths * rx_index *
                std::cos(chan.paths.aoa[i]);
        sum += chan.paths.alpha[i] * std::polar(1.0, phase);
    }
    return sum;
}

void dump_pathset_csv(const PathSet &paths, std::ostream &out)
{
    out << "l,q,alpha,phi,aod_rad,aoa_rad\n";
    for (int l = 0; l < paths.n_taps; ++l)
        for (int q = 0; q < paths.n_paths; ++q)
        {
            const size_t i = paths.idx(l, q);
            out << l << ',' << q << ',' << format_double(paths.alpha[i]) << ','
                << format_double(paths.phi[i]) << ',' << format_double(paths.aod[i])
                << ',' << format_double(paths.aoa[i]) << '\n';
        }
}

} // namespace ulasim
