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

#ifndef MMWCB_MONTE_CARLO_HPP
#define MMWCB_MONTE_CARLO_HPP

#include "mmwcb/codebook.hpp"
#include "mmwcb/search.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mmwcb
{

struct SimConfig
{
    std::size_t l_paths = 1;
    std::size_t l_s = 128;
    bool papc = true;
    double p_per = 1.0;
    double p_total = 1.0;
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::size_t workers = 1;

    void validate() const;

    /// Reference power the SNR axis is measured against: p_per under PAPC, p_total otherwise.
    double reference_power() const noexcept { return papc ? p_per : p_total; }
    double noise_for_snr(double snr_db) const;
};

/// One scheme entering a sweep: Tx and Rx codebooks may differ in size.
struct SchemeEntry
{
    std::string name;
    const HierarchicalCodebook *tx = nullptr;
    const HierarchicalCodebook *rx = nullptr;
};

struct TrialOutcome
{
    bool success = false;
    double rate = 0.0;
};

struct SweepRow
{
    double snr_db = 0.0;
    std::string scheme;
    double success_rate = 0.0;
    double rate_bps_hz = 0.0;
    std::size_t trials = 0;
    double stderr_success = 0.0; // binomial standard error of success_rate
    double stderr_rate = 0.0;    // standard error of the mean rate
};

/// True when the strongest path's (psi, Omega) fall inside the bottom-layer coverages of the
/// selected Tx / Rx codewords.
bool search_succeeded(const SearchResult &res, const ChannelRealization &ch, const HierarchicalCodebook &tx_cb,
                      const HierarchicalCodebook &rx_cb);

/// log2(1 + p_eff |w_R^H H w_T|^2 / n0) for the selected bottom-layer pair.
double achievable_rate(const SearchResult &res, const ComplexMatrix &h, const HierarchicalCodebook &tx_cb,
                       const HierarchicalCodebook &rx_cb, const TxPower &power, double n0);

/// Sweeps every (snr, scheme) pair. Trial t uses the channel drawn from substream (seed, t) for
/// all schemes and SNRs; measurement noise comes from (seed, t, snr index, scheme index). Rows
/// are ordered SNR-major, schemes in input order, and do not depend on cfg.workers.
std::vector<SweepRow> run_monte_carlo(const std::vector<SchemeEntry> &schemes, const std::vector<double> &snr_db,
                                      const SimConfig &cfg);

/// Pools |entry|^2 of codeword 1 (unit norm) of layers 1..depth of every codebook and returns the
/// sorted (power, cumulative fraction) pairs.
std::vector<std::pair<double, double>> element_power_cdf(const std::vector<const HierarchicalCodebook *> &codebooks);

} // namespace mmwcb

#endif
