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
#include "ulasim/experiments.hpp"

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace
{

std::ofstream open_output(const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

int run_doppler(const std::string &config_path, const std::string &out_path)
{
    ulasim::ExperimentExtras extras;
    const ulasim::SimulationConfig cfg = ulasim::parse_config_file(config_path, &extras);

    std::vector<int> n_tx_list = extras.sweep_n_tx;
    if (n_tx_list.empty())
        n_tx_list = {cfg.n_tx};
    std::vector<double> f_d_list = extras.sweep_f_d_hz;
    if (f_d_list.empty())
        f_d_list = {cfg.max_doppler_hz};

    const auto rows = ulasim::run_doppler_sweep(cfg, n_tx_list, f_d_list);
    std::ofstream out = open_output(out_path);
    ulasim::write_doppler_csv(rows, out);
    std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
    return 0;
}

int run_ser(const std::string &config_path, const std::string &scheme_name,
            const std::vector<double> &snr_list, long trials, long min_errors,
            std::uint64_t seed_override, bool has_seed, const std::string &out_path)
{
    ulasim::SimulationConfig cfg = ulasim::parse_config_file(config_path);
    const ulasim::Scheme scheme = ulasim::parse_scheme(scheme_name);
    const std::uint64_t seed = has_seed ? seed_override : cfg.rng_seed;

    std::vector<ulasim::SerPoint> points;
    points.reserve(snr_list.size());
    for (const double snr : snr_list)
    {
        points.push_back(
            ulasim::run_ser_point(cfg, scheme, snr, min_errors, trials, seed));
        const ulasim::SerPoint &p = points.back();
        std::cerr << ulasim::scheme_name(scheme) << " snr=" << snr
                  << " dB: " << p.n_errors << "/" << p.n_symbols
                  << " errors over " << p.n_frames << " frames\n";
    }
    std::ofstream out = open_output(out_path);
    ulasim::write_ser_csv(points, out);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"high-mobility OFDM uplink simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;

    CLI::App *doppler = app.add_subcommand(
        "doppler", "Doppler-spread sweep over array sizes and peak Doppler values");
    doppler->add_option("--config", config_path, "simulation config file")->required();
    doppler->add_option("--out", out_path, "output CSV path")->required();

    std::string scheme = "proposed";
    std::vector<double> snr_list;
    long trials = 10000;
    long min_errors = 100;
    std::uint64_t seed = 0;

    CLI::App *ser = app.add_subcommand("ser", "Monte-Carlo symbol-error-rate sweep");
    ser->add_option("--config", config_path, "simulation config file")->required();
    ser->add_option("--scheme", scheme,
                    "proposed | conventional_dfo | conventional_nodfo | "
                    "proposed_nodfo_reference")
        ->required();
    ser->add_option("--snr", snr_list, "receive SNR values, dB")->required();
    ser->add_option("--trials", trials, "frame cap per SNR point");
    ser->add_option("--min-errors", min_errors,
                    "stop a point once this many symbol errors accumulate");
    CLI::Option *seed_opt =
        ser->add_option("--seed", seed, "Monte-Carlo seed (default: config rng_seed)");
    ser->add_option("--out", out_path, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (doppler->parsed())
            return run_doppler(config_path, out_path);
        return run_ser(config_path, scheme, snr_list, trials, min_errors, seed,
                       seed_opt->count() > 0, out_path);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
