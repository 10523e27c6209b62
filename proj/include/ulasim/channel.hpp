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

#ifndef ULASIM_CHANNEL_HPP
#define ULASIM_CHANNEL_HPP

#include "ulasim/config.hpp"
#include "ulasim/ofdm.hpp"
#include "ulasim/rng.hpp"

#include <complex>
#include <ostream>
#include <vector>

namespace ulasim
{

// Per-path random variables for one frame, L taps x N_p paths each, stored
// row-major by tap. For each tap, sum_q alpha^2 equals the tap power exactly
// (deterministic magnitudes with random phases).
struct PathSet
{
    int n_taps = 0;
    int n_paths = 0;
    std::vector<double> alpha; // gain, >= 0
    std::vector<double> phi;   // phase, [0, 2 pi)
    std::vector<double> aod;   // departure angle, [0, pi)
    std::vector<double> aoa;   // arrival angle, [0, pi)

    size_t idx(int l, int q) const { return static_cast<size_t>(l) * n_paths + q; }
};

// One frozen channel draw plus the geometry it was drawn under. The channel
// is a deterministic function of (rng stream, config); tap gains at any
// sample index are generated lazily from the stored path variables.
struct ChannelRealization
{
    PathSet paths;
    std::vector<int> tap_delays;       // samples
    double tx_spacing_wavelengths = 0; // d_t / lambda
    double rx_spacing_wavelengths = 0; // d_r / lambda
    double max_doppler_hz = 0;         // f_d
    double sample_interval = 0;        // T_s, seconds
};

// Draws one realization: alpha = sqrt(tap_power / N_p); phase, departure and
// arrival angles i.i.d. uniform on their ranges, one forked sub-stream per
// path so the draw is independent of evaluation order.
ChannelRealization draw_realization(const ValidatedConfig &config, const Rng &stream);

// Transmit steering vector: element t (0-based) is
// exp(j 2 pi t (d_t/lambda) cos theta); element 0 is always 1.
std::vector<cplx> tx_steering(double theta, int n_tx, double spacing_wavelengths);

// Receive-side phase for antenna index r (0-based):
// exp(j 2 pi r (d_r/lambda) cos theta_aoa); r = 0 gives 1.
cplx rx_phase(double theta_aoa, int rx_index, double spacing_wavelengths);

// Tap gain g(l, n) between transmit antenna t and receive antenna r
// (0-based indices):
//   sum_q alpha exp(j[omega_d n T_s cos(aod) + phi + psi_t(aod) + psi_r(aoa)]).
cplx tap_gain(const ChannelRealization &chan, int l, long long n, int tx_index,
              int rx_index);

// Debug/fixture dump, one row per path: l,q,alpha,phi,aod_rad,aoa_rad.
void dump_pathset_csv(const PathSet &paths, std::ostream &out);

} // namespace ulasim

#endif
