// SPDX-License-Identifier: Apache-2.0
//
// axmu: 802.11ax downlink SU/MU-MIMO sounding and capacity simulator
// Copyright (C) 2026 The axmu Authors
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

#include "axmu/commands.hpp"
#include "axmu/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

int main(int argc, char **argv)
{
    CLI::App app{"axmu: 802.11ax downlink SU/MU-MIMO sounding overhead and capacity simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(axmu::config_help());

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out_dir;
    std::optional<int> codebook;
    std::optional<int> cycles;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "master seed (run.seed)");
    app.add_option("--workers", workers, "worker threads (run.workers)")->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "output directory (run.out)");
    app.add_option("--codebook", codebook, "codebook info for overhead and sweeps")->check(CLI::IsMember({0, 1}));
    app.add_option("--cycles", cycles, "Monte Carlo cycles for every mode")->check(CLI::PositiveNumber);
    app.add_option("--set", overrides, "override a config key, e.g. --set link.tx_power_dbm=23");

    auto *overhead = app.add_subcommand("overhead", "sounding airtime per STA count -> overhead.csv");
    auto *capacity = app.add_subcommand("capacity", "interference-free effective capacity -> capacity.csv");
    auto *sweep = app.add_subcommand("sweep", "spatial-correlation sweeps -> separation_sweep.csv / distance_sweep.csv");
    std::string kind;
    sweep->add_option("--kind", kind, "separation or distance")
        ->required()
        ->check(CLI::IsMember({"separation", "distance"}));
    auto *guideline = app.add_subcommand("guideline", "20-cell MU on/off table -> guideline.csv + guideline.json");

    CLI11_PARSE(app, argc, argv);

    try
    {
        axmu::RunConfig cfg = config_path.empty() ? axmu::RunConfig{} : axmu::load_config(config_path);
        for (const auto &kv : overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
            axmu::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (seed)
            cfg.seed = *seed;
        if (workers)
            cfg.workers = *workers;
        if (out_dir)
            cfg.out_dir = *out_dir;
        if (codebook)
        {
            cfg.sounding.codebook_info = *codebook;
            cfg.sweep.codebook = *codebook;
        }
        if (cycles)
            cfg.idealized.n_cycles = cfg.sweep.n_cycles = cfg.guideline.n_cycles = *cycles;
        cfg.finalize();

        if (*overhead)
            axmu::run_overhead(cfg, std::cout);
        else if (*capacity)
            axmu::run_capacity(cfg, std::cout);
        else if (*sweep)
            axmu::run_sweep(cfg, kind, std::cout);
        else if (*guideline)
            axmu::run_guideline(cfg, std::cout);
    }
    catch (const std::exception &e)
    {
        std::cerr << "axmu: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
