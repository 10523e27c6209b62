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

#ifndef ULASIM_CONFIG_HPP
#define ULASIM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ulasim
{

enum class Modulation
{
    qam16
};

// All scalar parameters of one simulation run. Field names double as the keys
// of the flat `key = value` config-file format.
struct SimulationConfig
{
    int n_subcarriers = 128;              // N_c
    int n_cp = 16;                        // cyclic-prefix length, samples
    int n_blocks = 5;                     // blocks per frame, first is training
    double block_duration = 1e-4;         // T_b, seconds (CP included)
    double carrier_wavelength = 0.1;      // lambda, meters
    double max_doppler_hz = 1000.0;       // f_d
    int n_tx = 128;                       // transmit array size
    int n_rx = 4;                         // receive array size
    double tx_spacing_wavelengths = 0.45; // d_t / lambda, must be < 0.5
    double rx_spacing_wavelengths = 0.5;  // d_r / lambda
    int n_taps = 6;                       // L
    int n_paths_per_tap = 64;             // N_p
    std::vector<int> tap_delays = {0, 3, 6, 9, 12, 15}; // samples, increasing
    std::vector<double> tap_powers = {};  // sums to 1; empty = uniform 1/L
    int n_beams = 90;                     // Q
    double snr_db = 25.0;                 // receive SNR; +inf disables noise
    Modulation modulation = Modulation::qam16;
    std::uint64_t rng_seed = 1;
};

// Config that passed validate(), with derived quantities attached.
// Immutable after construction and safe to share across workers.
struct ValidatedConfig
{
    SimulationConfig cfg;
    int n_samples_per_block = 0; // N_s = N_c + N_cp
    double sample_interval = 0.0; // T_s = T_b / N_s, seconds
    double omega_d = 0.0;         // 2*pi*f_d, rad/s
};

// Checks all invariants and attaches derived quantities.
// Throws DelayExceedsCp, SpacingTooWide, BadPowerProfile, DimensionMismatch,
// or BadConfigFile (for generic range violations).
ValidatedConfig validate(const SimulationConfig &config);

// Q beam directions, strictly increasing, symmetric about pi/2, excluding
// the endfire angles 0 and pi.
struct BeamGrid
{
    std::vector<double> angles; // radians, each in (0, pi)
};

// Bin-center grid theta_i = (i + 0.5) * pi / q, i = 0..q-1.
BeamGrid build_beam_grid(int q);

// Flat key-value config file: one `key = value` per line, `#` comments,
// keys exactly as the SimulationConfig field names, lists comma-separated.
// Unknown keys are rejected. `extra` (optional) receives experiment-level
// keys (sweep_n_tx, sweep_f_d_hz) that are not part of SimulationConfig.
struct ExperimentExtras
{
    std::vector<int> sweep_n_tx;
    std::vector<double> sweep_f_d_hz;
};

SimulationConfig parse_config_file(const std::string &path,
                                   ExperimentExtras *extra = nullptr);

SimulationConfig parse_config_text(const std::string &text,
                                   ExperimentExtras *extra = nullptr);

} // namespace ulasim

#endif
