// SPDX-License-Identifier: Apache-2.0
//
// mmwcb - hierarchical codebook design for hybrid-precoding mmWave arrays
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

// Command-line front end: mmwcb <design|beampattern|gdp|cdf|simulate|linkbudget> [--config PATH] [--key value ...]

#include "mmwcb/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace
{

struct Sub
{
    const char *name;
    const char *help;
};

constexpr Sub kCommands[] = {
    {"design", "build a hierarchical codebook and write it to --out"},
    {"beampattern", "sample |A|^2 in dB for codewords of a stored codebook"},
    {"gdp", "GDP of the layer-1 codeword per N, scheme and gamma_per"},
    {"cdf", "empirical CDF of element powers"},
    {"simulate", "Monte Carlo success rate and achievable rate"},
    {"linkbudget", "link-budget arithmetic and the resulting gamma_per range"},
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmwcb - hierarchical codebooks for hybrid-precoding mmWave arrays"};
    app.set_version_flag("--version", mmwcb::kVersion);
    app.require_subcommand(1);

    std::map<std::string, std::string> config_path;
    std::map<std::string, std::map<std::string, std::string>> overrides;

    for (const auto &c : kCommands)
    {
        auto *sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", config_path[c.name], "flat key = value file; flags win");
        for (const auto &key : mmwcb::config_keys())
            sub->add_option("--" + key, overrides[c.name][key], "override config key '" + key + "'");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    auto *sub = app.get_subcommand(command);
    try
    {
        mmwcb::ExperimentConfig cfg = mmwcb::default_config(command);
        if (!config_path[command].empty())
            mmwcb::apply_config_file(cfg, config_path[command]);
        for (const auto &key : mmwcb::config_keys())
            if (sub->count("--" + key) > 0)
                cfg.set(key, overrides[command][key]);

        std::string log;
        const std::string text = mmwcb::run_command(command, cfg, &log);
        if (command == "design" || cfg.out.empty())
            std::cout << text;
        std::cerr << log;
        std::cout.flush();
        return std::cout ? 0 : 4;
    }
    catch (const std::exception &e)
    {
        std::cerr << "mmwcb " << command << ": " << e.what() << "\n";
        return mmwcb::exit_code_for(e);
    }
}
