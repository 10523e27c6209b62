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

#include "ulasim/experiments.hpp"

#include "ulasim/analysis.hpp"
#include "ulasim/errors.hpp"
#include "ulasim/receiver.hpp"
#include "ulasim/util.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>

namespace ulasim
{

Scheme parse_scheme(const std::string &name)
{
    if (name == "proposed")
        return Scheme::proposed;
    if (name == "conventional_dfo")
        return Scheme::conventional_dfo;
    if (name == "conventional_nodfo")
        return Scheme::conventional_nodfo;
    if (name == "proposed_nodfo_reference")
        return Scheme::proposed_nodfo_reference;
    throw BadConfigFile("unknown scheme: " + name);
}

std::string scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::proposed:
        return "proposed";
    case Scheme::conventional_dfo:
        return "conventional_dfo";
    case Scheme::conventional_nodfo:
        return "conventional_nodfo";
    case Scheme::proposed_nodfo_reference:
        return "proposed_nodfo_reference";
    }
    throw DomainError("invalid scheme value");
}

RxFrame project_through(const OfdmFrame &frame, const BeamformingNetwork &network,
                        const ChannelRealization &chan, const ValidatedConfig &config,
                        bool pre_compensate)
{
    if (network.n_tx != config.cfg.n_tx)
        throw DimensionMismatch("network antenna count differs from config");
    if (frame.n_blocks != config.cfg.n_blocks ||
        frame.samples_per_block() != config.n_samples_per_block)
        throw DimensionMismatch("frame shape differs from config");
    if (chan.paths.n_taps != static_cast<int>(chan.tap_delays.size()))
        throw DimensionMismatch("channel tap count differs from delay list");

    const int n_tx = network.n_tx;
    const int q = network.n_branches();
    const int n_rx = config.cfg.n_rx;
    const int n_s = frame.samples_per_block();
    const long total = static_cast<long>(frame.n_blocks) * n_s;
    const int n_taps = chan.paths.n_taps;
    const int n_paths = chan.paths.n_paths;
    const int n_all = n_taps * n_paths;
    const double wd_ts = 2.0 * Rng::pi * chan.max_doppler_hz * chan.sample_interval;

    Eigen::MatrixXcd wc(n_tx, q);
    for (int i = 0; i < q; ++i)
        for (int t = 0; t < n_tx; ++t)
            wc(t, i) = std::conj(network.weight(i, t));

    Eigen::MatrixXcd steer(n_all, n_tx);
    for (int p = 0; p < n_all; ++p)
    {
        const double step = 2.0 * Rng::pi * chan.tx_spacing_wavelengths *
                            std::cos(chan.paths.aod[static_cast<size_t>(p)]);
        for (int t = 0; t < n_tx; ++t)
            steer(p, t) = std::polar(1.0, step * t);
    }

    // (steering x conj-weights) first: paths x branches, independent of time.
    Eigen::MatrixXcd beam_gain(n_all, q);
    beam_gain.noalias() = steer * wc;

    Eigen::MatrixXcd proj(n_all, total);
    if (pre_compensate)
    {
        Eigen::MatrixXcd branch(q, total);
        for (int i = 0; i < q; ++i)
        {
            const double rate =
                -config.omega_d * config.sample_interval *
                std::cos(network.grid.angles[static_cast<size_t>(i)]);
            for (long tg = 0; tg < total; ++tg)
            {
                const double u = static_cast<double>(tg) - config.cfg.n_cp;
                branch(i, tg) = frame.time_samples[static_cast<size_t>(tg)] *
                                std::polar(1.0, rate * u);
            }
        }
        proj.noalias() = beam_gain * branch;
    }
    else
    {
        // Without compensation every branch carries the same samples, so the
        // branch sum collapses to a rank-one product.
        const Eigen::VectorXcd combined = beam_gain.rowwise().sum();
        const Eigen::Map<const Eigen::RowVectorXcd> s(frame.time_samples.data(), total);
        proj.noalias() = combined * s;
    }

    Eigen::MatrixXcd rx_coef(n_rx, n_all);
    for (int p = 0; p < n_all; ++p)
    {
        const cplx base = chan.paths.alpha[static_cast<size_t>(p)] *
                          std::polar(1.0, chan.paths.phi[static_cast<size_t>(p)]);
        for (int r = 0; r < n_rx; ++r)
            rx_coef(r, p) = base * rx_phase(chan.paths.aoa[static_cast<size_t>(p)], r,
                                            chan.rx_spacing_wavelengths);
    }

    Eigen::MatrixXcd rotated(n_all, total);
    rotated.setZero();
    for (int l = 0; l < n_taps; ++l)
    {
        const int dl = chan.tap_delays[static_cast<size_t>(l)];
        for (int pq = 0; pq < n_paths; ++pq)
        {
            const int p = l * n_paths + pq;
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
    rx.n_blocks = frame.n_blocks;
    rx.samples_per_block = n_s;
    rx.samples.resize(static_cast<size_t>(total) * n_rx);
    Eigen::Map<Eigen::MatrixXcd> y(rx.samples.data(), n_rx, total);
    y.noalias() = rx_coef * rotated;
    rx.noise_variance = 0.0;
    return rx;
}

std::pair<long, long> run_ser_frame(const ValidatedConfig &config,
                                    const BeamformingNetwork &network,
                                    bool pre_compensate, double snr_db,
                                    const Rng &frame_rng)
{
    Rng chan_rng = frame_rng.fork(0);
    Rng data_rng = frame_rng.fork(1);
    Rng noise_rng = frame_rng.fork(2);

    const ChannelRealization chan = draw_realization(config, chan_rng);
    const OfdmFrame frame = build_frame(config, data_rng);

    const RxFrame clean = project_through(frame, network, chan, config, pre_compensate);
    const RxFrame noisy = add_awgn(clean, snr_db, noise_rng);

    const RxFreq rf = demodulate_frame(noisy, config.cfg.n_cp);
    const int nc = config.cfg.n_subcarriers;
    const std::vector<cplx> training(frame.freq_symbols.begin(),
                                     frame.freq_symbols.begin() + nc);
    const ChannelEstimate est = ls_estimate(rf, training);
    const DetectionResult det = mrc_detect(rf, est);
    const std::vector<cplx> reference(frame.freq_symbols.begin() + nc,
                                      frame.freq_symbols.end());
    return count_ser(det, reference);
}

SerPoint run_ser_point(const SimulationConfig &base, Scheme scheme, double snr_db,
                       long min_errors, long max_frames, std::uint64_t seed)
{
    if (max_frames < 1)
        throw BadLength("at least one frame is required");

    SimulationConfig cfg = base;
    const bool pre_compensate =
        scheme == Scheme::proposed || scheme == Scheme::proposed_nodfo_reference;
    if (scheme == Scheme::conventional_nodfo ||
        scheme == Scheme::proposed_nodfo_reference)
        cfg.max_doppler_hz = 0.0;

    const ValidatedConfig vc = validate(cfg);
    const Rng master(seed);
    Rng net_rng = master.fork(0, 1);
    const BeamformingNetwork network =
        build_network(vc, build_beam_grid(cfg.n_beams), net_rng);

    SerPoint point;
    point.scheme = scheme;
    point.n_tx = cfg.n_tx;
    point.snr_db = snr_db;
    for (long t = 0; t < max_frames; ++t)
    {
        const auto [errors, symbols] = run_ser_frame(
            vc, network, pre_compensate, snr_db,
            master.fork(static_cast<std::uint64_t>(t) + 1));
        point.n_frames += 1;
        point.n_errors += errors;
        point.n_symbols += symbols;
        if (point.n_errors >= min_errors)
            break;
    }
    point.ser = point.n_symbols > 0
                    ? static_cast<double>(point.n_errors) /
                          static_cast<double>(point.n_symbols)
                    : 0.0;
    return point;
}

void write_ser_csv(const std::vector<SerPoint> &points, std::ostream &out)
{
    out << "scheme,n_tx,snr_db,n_symbols,n_errors,ser\n";
    for (const SerPoint &p : points)
    {
        out << scheme_name(p.scheme) << ',' << p.n_tx << ','
            << format_double(p.snr_db) << ',' << p.n_symbols << ',' << p.n_errors
            << ',' << format_double(p.ser) << "\n";
    }
}

std::vector<DopplerRow> run_doppler_sweep(const SimulationConfig &base,
                                          const std::vector<int> &n_tx_list,
                                          const std::vector<double> &f_d_hz_list)
{
    if (n_tx_list.empty() || f_d_hz_list.empty())
        throw BadLength("sweep lists must be non-empty");

    std::vector<DopplerRow> rows;
    rows.reserve(n_tx_list.size() * f_d_hz_list.size());
    for (const int n_tx : n_tx_list)
    {
        for (const double f_d : f_d_hz_list)
        {
            DopplerRow row;
            row.n_tx = n_tx;
            row.f_d_hz = f_d;
            if (f_d > 0.0)
            {
                const ConfigPoint pt{n_tx, base.tx_spacing_wavelengths,
                                     2.0 * Rng::pi * f_d};
                const SpectrumReport report = make_spectrum_report(pt);
                row.sigma_numerical = report.sigma_ds_numerical;
                row.sigma_closed_form = report.sigma_ds_closed_form;
                row.sigma_jakes = report.sigma_jakes;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_doppler_csv(const std::vector<DopplerRow> &rows, std::ostream &out)
{
    out << "n_tx,f_d_hz,sigma_numerical,sigma_closed_form,sigma_jakes\n";
    for (const DopplerRow &r : rows)
    {
        out << r.n_tx << ',' << format_double(r.f_d_hz) << ','
            << format_double(r.sigma_numerical) << ','
            << format_double(r.sigma_closed_form) << ','
            << format_double(r.sigma_jakes) << "\n";
    }
}

std::vector<cplx> equivalent_channel_trace(const ValidatedConfig &config,
                                           const BeamformingNetwork &network,
                                           const ChannelRealization &chan, int tap,
                                           long t_begin, int t_len)
{
    if (network.n_tx != config.cfg.n_tx)
        throw DimensionMismatch("network antenna count differs from config");
    if (tap < 0 || tap >= chan.paths.n_taps)
        throw DimensionMismatch("tap index out of range");
    if (t_len < 0)
        throw BadLength("trace length must be non-negative");

    const int n_tx = network.n_tx;
    const int q = network.n_branches();
    const int n_paths = chan.paths.n_paths;
    const double wd_ts = 2.0 * Rng::pi * chan.max_doppler_hz * chan.sample_interval;

    Eigen::MatrixXcd wc(n_tx, q);
    for (int i = 0; i < q; ++i)
        for (int t = 0; t < n_tx; ++t)
            wc(t, i) = std::conj(network.weight(i, t));

    Eigen::MatrixXcd steer(n_paths, n_tx);
    std::vector<cplx> path_coef(static_cast<size_t>(n_paths));
    std::vector<double> path_rate(static_cast<size_t>(n_paths));
    for (int pq = 0; pq < n_paths; ++pq)
    {
        const size_t p = chan.paths.idx(tap, pq);
        const double step =
            2.0 * Rng::pi * chan.tx_spacing_wavelengths * std::cos(chan.paths.aod[p]);
        for (int t = 0; t < n_tx; ++t)
            steer(pq, t) = std::polar(1.0, step * t);
        path_coef[static_cast<size_t>(pq)] =
            chan.paths.alpha[p] * std::polar(1.0, chan.paths.phi[p]) *
            rx_phase(chan.paths.aoa[p], 0, chan.rx_spacing_wavelengths);
        path_rate[static_cast<size_t>(pq)] = wd_ts * std::cos(chan.paths.aod[p]);
    }

    Eigen::MatrixXcd beam_gain(n_paths, q);
    beam_gain.noalias() = steer * wc;

    std::vector<double> branch_rate(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i)
        branch_rate[static_cast<size_t>(i)] =
            -wd_ts * std::cos(network.grid.angles[static_cast<size_t>(i)]);

    std::vector<cplx> trace(static_cast<size_t>(t_len));
    Eigen::VectorXcd branch_factor(q);
    for (int k = 0; k < t_len; ++k)
    {
        const double t = static_cast<double>(t_begin + k);
        for (int i = 0; i < q; ++i)
            branch_factor(i) = std::polar(1.0, branch_rate[static_cast<size_t>(i)] * t);
        const Eigen::VectorXcd inner = beam_gain * branch_factor;
        cplx acc(0.0, 0.0);
        for (int pq = 0; pq < n_paths; ++pq)
            acc += path_coef[static_cast<size_t>(pq)] *
                   std::polar(1.0, path_rate[static_cast<size_t>(pq)] * t) * inner(pq);
        trace[static_cast<size_t>(k)] = acc;
    }
    return trace;
}

} // namespace ulasim
