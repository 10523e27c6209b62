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

#include "ulasim/config.hpp"
#include "ulasim/errors.hpp"
#include "ulasim/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ulasim
{

ValidatedConfig validate(const SimulationConfig &config)
{
    SimulationConfig c = config;
    if (c.n_subcarriers < 1)
        throw BadConfigFile("n_subcarriers must be positive");
    if (c.n_cp < 0)
        throw BadConfigFile("n_cp must be non-negative");
    if (c.n_blocks < 1)
        throw BadConfigFile("n_blocks must be positive");
    if (!(c.block_duration > 0.0))
        throw BadConfigFile("block_duration must be positive");
    if (!(c.carrier_wavelength > 0.0))
        throw BadConfigFile("carrier_wavelength must be positive");
    if (c.max_doppler_hz < 0.0)
        throw BadConfigFile("max_doppler_hz must be non-negative");
    if (c.n_tx < 1 || c.n_rx < 1)
        throw BadConfigFile("n_tx and n_rx must be positive");
    if (c.n_taps < 1 || c.n_paths_per_tap < 1)
        throw BadConfigFile("n_taps and n_paths_per_tap must be positive");
    if (c.n_beams < 1)
        throw BadConfigFile("n_beams must be positive");
    if (!(c.rx_spacing_wavelengths > 0.0))
        throw BadConfigFile("rx_spacing_wavelengths must be positive");

    if (!(c.tx_spacing_wavelengths > 0.0) || c.tx_spacing_wavelengths >= 0.5)
        throw SpacingTooWide("tx_spacing_wavelengths must lie in (0, 0.5): got " +
                             std::to_string(c.tx_spacing_wavelengths));

    if (c.tap_powers.empty())
        c.tap_powers.assign(static_cast<size_t>(c.n_taps), 1.0 / c.n_taps);

    if (static_cast<int>(c.tap_delays.size()) != c.n_taps ||
        static_cast<int>(c.tap_powers.size()) != c.n_taps)
        throw DimensionMismatch("tap_delays and tap_powers must each have n_taps entries");

    for (size_t i = 0; i < c.tap_delays.size(); ++i)
    {
        if (c.tap_delays[i] < 0)
            throw BadConfigFile("tap_delays must be non-negative");
        if (i > 0 && c.tap_delays[i] <= c.tap_delays[i - 1])
            throw BadConfigFile("tap_delays must be strictly increasing");
    }
    if (c.tap_delays.back() > c.n_cp)
        throw DelayExceedsCp("max(tap_delays) = " + std::to_string(c.tap_delays.back()) +
                             " exceeds n_cp = " + std::to_string(c.n_cp));

    double psum = 0.0;
    for (double p : c.tap_powers)
    {
        if (!(p > 0.0))
            throw BadPowerProfile("tap_powers must be positive");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw BadPowerProfile("tap_powers must sum to 1 within 1e-9, got " +
                              std::to_string(psum));

    ValidatedConfig v;
    v.cfg = c;
    v.n_samples_per_block = c.n_subcarriers + c.n_cp;
    v.sample_interval = c.block_duration / v.n_samples_per_block;
    v.omega_d = 2.0 * Rng::pi * c.max_doppler_hz;
    return v;
}

BeamGrid build_beam_grid(int q)
{
    if (q < 1)
        throw BadConfigFile("beam count must be positive");
    BeamGrid grid;
    grid.angles.resize(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i)
        grid.angles[static_cast<size_t>(i)] = (i + 0.5) * Rng::pi / q;
    return grid;
}

namespace
{

std::string strip(const std::string &s)
{
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(strip(item));
    return out;
}

double parse_real(const std::string &s, const std::string &key)
{
    if (s == "inf" || s == "+inf")
        return std::numeric_limits<double>::infinity();
    try
    {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (const std::exception &)
    {
        throw BadConfigFile("cannot parse real value for " + key + ": '" + s + "'");
    }
}

long long parse_int(const std::string &s, const std::string &key)
{
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw BadConfigFile("cannot parse integer value for " + key + ": '" + s + "'");
    return v;
}

} // namespace

SimulationConfig parse_config_text(const std::string &text, ExperimentExtras *extra)
{
    SimulationConfig c;
    c.tap_powers.clear(); // filled by validate() if the file does not set it
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = strip(line);
        if (line.empty())
            continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw BadConfigFile("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (val.empty())
            throw BadConfigFile("line " + std::to_string(lineno) + ": empty value for " + key);

        if (key == "n_subcarriers")
            c.n_subcarriers = static_cast<int>(parse_int(val, key));
        else if (key == "n_cp")
            c.n_cp = static_cast<int>(parse_int(val, key));
        else if (key == "n_blocks")
            c.n_blocks = static_cast<int>(parse_int(val, key));
        else if (key == "block_duration")
            c.block_duration = parse_real(val, key);
        else if (key == "carrier_wavelength")
            c.carrier_wavelength = parse_real(val, key);
        else if (key == "max_doppler_hz")
            c.max_doppler_hz = parse_real(val, key);
        else if (key == "n_tx")
            c.n_tx = static_cast<int>(parse_int(val, key));
        else if (key == "n_rx")
            c.n_rx = static_cast<int>(parse_int(val, key));
        else if (key == "tx_spacing_wavelengths")
            c.tx_spacing_wavelengths = parse_real(val, key);
        else if (key == "rx_spacing_wavelengths")
            c.rx_spacing_wavelengths = parse_real(val, key);
        else if (key == "n_taps")
            c.n_taps = static_cast<int>(parse_int(val, key));
        else if (key == "n_paths_per_tap")
            c.n_paths_per_tap = static_cast<int>(parse_int(val, key));
        else if (key == "tap_delays")
        {
            c.tap_delays.clear();
            for (const auto &item : split_list(val))
                c.tap_delays.push_back(static_cast<int>(parse_int(item, key)));
        }
        else if (key == "tap_powers")
        {
            c.tap_powers.clear();
            for (const auto &item : split_list(val))
                c.tap_powers.push_back(parse_real(item, key));
        }
        else if (key == "n_beams")
            c.n_beams = static_cast<int>(parse_int(val, key));
        else if (key == "snr_db")
            c.snr_db = parse_real(val, key);
        else if (key == "modulation")
        {
            if (val != "QAM16")
                throw BadConfigFile("unsupported modulation: " + val);
            c.modulation = Modulation::qam16;
        }
        else if (key == "rng_seed")
            c.rng_seed = static_cast<std::uint64_t>(parse_int(val, key));
        else if (key == "sweep_n_tx")
        {
            for (const auto &item : split_list(val))
            {
                const int v = static_cast<int>(parse_int(item, key));
                if (extra != nullptr)
                    extra->sweep_n_tx.push_back(v);
            }
        }
        else if (key == "sweep_f_d_hz")
        {
            for (const auto &item : split_list(val))
            {
                const double v = parse_real(item, key);
                if (extra != nullptr)
                    extra->sweep_f_d_hz.push_back(v);
            }
        }
        else
            throw BadConfigFile("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return c;
}

SimulationConfig parse_config_file(const std::string &path, ExperimentExtras *extra)
{
    std::ifstream f(path);
    if (!f)
        throw BadConfigFile("cannot open config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str(), extra);
}

} // namespace ulasim
