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

#include "ulasim/link.hpp"
#include "ulasim/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ulasim
{

RxFrame propagate(const TxWaveform &tx, const ChannelRealization &chan,
                  const ValidatedConfig &config)
{
    if (tx.n_tx != config.cfg.n_tx || tx.n_blocks != config.cfg.n_blocks ||
        tx.samples_per_block != config.n_samples_per_block)
        throw DimensionMismatch("tx waveform shape differs from config");
    if (chan.paths.n_taps != static_cast<int>(chan.tap_delays.size()))
        throw DimensionMismatch("channel tap count differs from delay list");

    const int n_tx = tx.n_tx;
    const int n_rx = config.cfg.n_rx;
    const int n_s = tx.samples_per_block;
    const long total = static_cast<long>(tx.n_blocks) * n_s;
    const int n_taps = chan.paths.n_taps;
    const int n_paths = chan.paths.n_paths;
    const int n_all = n_taps * n_paths;
    const double wd_ts = 2.0 * Rng::pi * chan.max_doppler_hz * chan.sample_interval;

    const Eigen::Map<const Eigen::MatrixXcd> x(tx.samples.data(), n_tx, total);

    // project the antenna signal onto every path's departure steering vector
    Eigen::MatrixXcd steer(n_all, n_tx);
    for (int p = 0; p < n_all; ++p)
    {
        const double step =
            2.0 * Rng::pi * chan.tx_spacing_wavelengths * std::cos(chan.paths.aod[static_cast<size_t>(p)]);
        for (int t = 0; t < n_tx; ++t)
            steer(p, t) = std::polar(1.0, step * t);
    }
    Eigen::MatrixXcd proj(n_all, total);
    proj.noalias() = steer * x;

    // receive-side constants: alpha e^{j phi} e^{j psi_r(aoa)}
    Eigen::MatrixXcd rx_coef(n_rx, n_all);
    for (int p = 0; p < n_all; ++p)
    {
        const cplx base = chan.paths.alpha[static_cast<size_t>(p)] *
                          std::polar(1.0, chan.paths.phi[static_cast<size_t>(p)]);
        for (int r = 0; r < n_rx; ++r)
            rx_coef(r, p) =
                base * rx_phase(chan.paths.aoa[static_cast<size_t>(p)], r,
                                chan.rx_spacing_wavelengths);
    }

    // per tap: delay, rotate by the path Doppler at emission time, combine
    Eigen::MatrixXcd rotated(n_all, total);
    rotated.setZero();
    for (int l = 0; l < n_taps; ++l)
    {
        const int dl = chan.tap_delays[static_cast<size_t>(l)];
        for (int q = 0; q < n_paths; ++q)
        {
            const int p = l * n_paths + q;
            const double rate = wd_ts * std::cos(chan.paths.aod[static_cast<size_t>(p)]);
            for (long tg = dl; tg < total; ++tg)
            {
                const double u = static_cast<double>(tg - dl) - config.cfg.n_cp;
                rotated(p, tg) = proj(p, tg - dl) * std::polar(1.0, rate * u);
            }
        }
    }

    RxFrame rx;
    rx.n_rx = n_rx;
    rx.n_blocks = tx.n_blocks;
    rx.samples_per_block = n_s;
    rx.samples.resize(static_cast<size_t>(total) * n_rx);
    Eigen::Map<Eigen::MatrixXcd> y(rx.samples.data(), n_rx, total);
    y.noalias() = rx_coef * rotated;
    rx.noise_variance = 0.0;
    return rx;
}

RxFrame add_awgn(const RxFrame &rx, double snr_db, Rng &rng)
{
    if (std::isinf(snr_db) && snr_db > 0)
        return rx;

    double p_sig = 0.0;
    for (const cplx &v : rx.samples)
        p_sig += std::norm(v);
    p_sig /= static_cast<double>(rx.samples.size());

    const double sigma2 = p_sig / std::pow(10.0, snr_db / 10.0);
    const double scale = std::sqrt(sigma2);

    RxFrame out = rx;
    for (cplx &v : out.samples)
        v += scale * rng.cnormal();
    out.noise_variance = sigma2;
    return out;
}

} // namespace ulasim
