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

#ifndef MMWCB_EXPERIMENTS_HPP
#define MMWCB_EXPERIMENTS_HPP

#include "mmwcb/codebook.hpp"
#include "mmwcb/gdp.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mmwcb
{

inline constexpr const char *kVersion = "0.1.0";

enum class PatternNorm
{
    Unit,
    Papc,
    Both,
};

/// Resolved parameters shared by every subcommand. Keys are listed by config_keys().
struct ExperimentConfig
{
    std::vector<std::size_t> n_antennas{32};
    std::size_t m_rf = 2;
    std::vector<Scheme> schemes{Scheme::BmwMsCf, Scheme::BmwMsLcs, Scheme::PsDft};
    std::size_t grid_size = 64;
    std::vector<double> gamma_per_db{0.0};
    std::optional<std::size_t> integration_points;

    std::vector<double> snr_db{-30, -25, -20, -15, -10, -5, 0};
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    bool papc = true;
    double p_per = 1.0;
    double p_total = 1.0;
    std::size_t l_s = 128;
    std::size_t l_paths = 1;
    std::size_t workers = 1;

    std::string codebook; // input codebook for beampattern
    std::size_t layer = 1;
    std::size_t codeword = 0; // 0 = every codeword of the layer
    std::size_t points = 2048;
    PatternNorm normalization = PatternNorm::Both;

    LinkBudget link;
    double excess_loss_max_db = 15.0;

    std::string out; // empty: standard output

    /// Sets one key from its textual value. Throws ValidationError on unknown keys or bad values.
    void set(const std::string &key, const std::string &value);

    /// Range checks run before any computation.
    void validate() const;

    /// "key=value" for every key, in config_keys() order. `workers` and `out` are left out
    /// because they cannot change the numbers produced.
    std::string provenance() const;

    GdpConfig gdp_config(double gamma_db) const;
};

/// Every accepted key, in a fixed order.
const std::vector<std::string> &config_keys();

/// Per-command defaults (gdp sweeps N in {16,32,64} and gamma_per in {0,2} dB).
ExperimentConfig default_config(const std::string &command);

/// Applies a flat "key = value" file ('#' starts a comment). Errors carry the line number.
void apply_config_file(ExperimentConfig &cfg, const std::filesystem::path &path);

/// Subcommands. Each returns the text it produced; when cfg.out is set the main artifact is also
/// written there. `log` receives human-oriented progress (may be null).
std::string cmd_design(const ExperimentConfig &cfg, std::string *log = nullptr);
std::string cmd_beampattern(const ExperimentConfig &cfg);
std::string cmd_gdp(const ExperimentConfig &cfg);
std::string cmd_cdf(const ExperimentConfig &cfg);
std::string cmd_simulate(const ExperimentConfig &cfg);
std::string cmd_linkbudget(const ExperimentConfig &cfg);

std::string run_command(const std::string &command, const ExperimentConfig &cfg, std::string *log = nullptr);

/// Exit status for an exception escaping a command: 2 validation, 3 infeasible geometry, 4 I/O.
int exit_code_for(const std::exception &e);

/// Writes `text` to `path` byte for byte. Throws IoError.
void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace mmwcb

#endif
