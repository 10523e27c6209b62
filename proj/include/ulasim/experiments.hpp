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

#ifndef ULASIM_EXPERIMENTS_HPP
#define ULASIM_EXPERIMENTS_HPP

#include "ulasim/channel.hpp"
#include "ulasim/config.hpp"
#include "ulasim/link.hpp"
#include "ulasim/ofdm.hpp"
#include "ulasim/rng.hpp"
#include "ulasim/txfrontend.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ulasim
{

// Transmit/compensation variants compared in the SER experiments:
//   proposed                  beam-branch Doppler pre-compensation on
//   conventional_dfo          pre-compensation off, terminal in motion
//   conventional_nodfo        pre-compensation off, terminal static
//   proposed_nodfo_reference  pre-compensation on, terminal static
//                             (must coincide with conventional_nodfo)
enum class Scheme
{
    proposed,
    conventional_dfo,
    conventional_nodfo,
    proposed_nodfo_reference
};

Scheme parse_scheme(const std::string &name); // BadConfigFile on unknown names
std::string scheme_name(Scheme scheme);

// Equivalent of compose_waveform followed by propagate, reassociated as
// (steering x weights) x branch-signals so the per-antenna waveform is never
// materialized. Identical math, orders of magnitude fewer products for large
// arrays; cross-checked against the two-step path in the tests.
RxFrame project_through(const OfdmFrame &frame, const BeamformingNetwork &network,
                        const ChannelRealization &chan, const ValidatedConfig &config,
                        bool pre_compensate);

// One frame end to end for a scheme: draw channel and payload, transmit,
// add noise, LS-estimate, MRC-detect, count symbol errors. Deterministic in
// (config, network, scheme knobs, frame_rng). Returns (errors, symbols).
std::pair<long, long> run_ser_frame(const ValidatedConfig &config,
                                    const BeamformingNetwork &network,
                                    bool pre_compensate, double snr_db,
                                    const Rng &frame_rng);

struct SerPoint
{
    Scheme scheme = Scheme::proposed;
    int n_tx = 0;
    double snr_db = 0.0;
    long n_frames = 0;
    long n_symbols = 0;
    long n_errors = 0;
    double ser = 0.0;
};

// Monte-Carlo SER at one operating point. Frames accumulate until at least
// min_errors symbol errors are seen or max_frames frames have run. Trial i
// reseeds from (seed, i), so any prefix of trials reproduces identically.
SerPoint run_ser_point(const SimulationConfig &base, Scheme scheme, double snr_db,
                       long min_errors, long max_frames, std::uint64_t seed);

void write_ser_csv(const std::vector<SerPoint> &points, std::ostream &out);

struct DopplerRow
{
    int n_tx = 0;
    double f_d_hz = 0.0;
    double sigma_numerical = 0.0;
    double sigma_closed_form = 0.0;
    double sigma_jakes = 0.0;
};

// Doppler-spread sweep over array sizes and peak Doppler values; each row
// carries the definition-pipeline figure, the closed-form figure, and the
// dense-scattering reference omega_d / sqrt(2). f_d = 0 rows are all zero.
std::vector<DopplerRow> run_doppler_sweep(const SimulationConfig &base,
                                          const std::vector<int> &n_tx_list,
                                          const std::vector<double> &f_d_hz_list);

void write_doppler_csv(const std::vector<DopplerRow> &rows, std::ostream &out);

// Scalar post-beamforming, post-pre-compensation channel of one tap at
// receive antenna 0, sampled at t_begin..t_begin+t_len-1 sample instants:
//   g(t) = sum_paths alpha e^{j phi} e^{j omega_d Ts cos(aod) t}
//          sum_branches (steering(aod)^T conj(w_i)) e^{-j omega_d Ts cos(theta_i) t}.
// Feeds the empirical autocorrelation studies.
std::vector<cplx> equivalent_channel_trace(const ValidatedConfig &config,
                                           const BeamformingNetwork &network,
                                           const ChannelRealization &chan, int tap,
                                           long t_begin, int t_len);

} // namespace ulasim

#endif
