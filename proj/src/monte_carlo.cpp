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

#include "mmwcb/monte_carlo.hpp"
#include "mmwcb/error.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mmwcb
{

void SimConfig::validate() const
{
    if (l_paths < 1)
        throw ValidationError("l_paths must be at least 1");
    if (trials < 1)
        throw ValidationError("trials must be at least 1");
    if (workers < 1)
        throw ValidationError("workers must be at least 1");
    if (!(p_per > 0.0) || !std::isfinite(p_per))
        throw ValidationError("p_per must be positive");
    if (!(p_total > 0.0) || !std::isfinite(p_total))
        throw ValidationError("p_total must be positive");
}

double SimConfig::noise_for_snr(double snr_db) const
{
    if (std::isnan(snr_db))
        throw ValidationError("snr_db is not a number");
    return reference_power() / std::pow(10.0, snr_db / 10.0);
}

bool search_succeeded(const SearchResult &res, const ChannelRealization &ch, const HierarchicalCodebook &tx_cb,
                      const HierarchicalCodebook &rx_cb)
{
    const auto &best = ch.paths[ch.strongest()];
    const auto &tx_cov = tx_cb.codeword(tx_cb.depth(), res.j_t).coverage;
    const auto &rx_cov = rx_cb.codeword(rx_cb.depth(), res.i_r).coverage;
    return tx_cov.contains(best.aod) && rx_cov.contains(best.aoa);
}

double achievable_rate(const SearchResult &res, const ComplexMatrix &h, const HierarchicalCodebook &tx_cb,
                       const HierarchicalCodebook &rx_cb, const TxPower &power, double n0)
{
    const Weights &wt = tx_cb.codeword(tx_cb.depth(), res.j_t).unit_awv;
    const Weights &wr = rx_cb.codeword(rx_cb.depth(), res.i_r).unit_awv;
    const double snr = power.stream_power(wt) * std::norm(bilinear(wr, h, wt)) / n0;
    return std::log2(1.0 + snr);
}

std::vector<SweepRow> run_monte_carlo(const std::vector<SchemeEntry> &schemes, const std::vector<double> &snr_db,
                                      const SimConfig &cfg)
{
    cfg.validate();
    if (schemes.empty() || snr_db.empty())
        throw ValidationError("run_monte_carlo: need at least one scheme and one SNR point");
    for (const auto &s : schemes)
    {
        if (s.tx == nullptr || s.rx == nullptr)
            throw PreconditionError("run_monte_carlo: scheme '" + s.name + "' has no codebook");
        const std::size_t m_rf = std::max(s.tx->branching, s.rx->branching);
        if (cfg.l_s < m_rf)
            throw ValidationError("l_s must be at least the number of RF chains");
    }

    std::vector<double> noise(snr_db.size());
    for (std::size_t p = 0; p < snr_db.size(); ++p)
        noise[p] = cfg.noise_for_snr(snr_db[p]);

    const std::size_t n_cells = snr_db.size() * schemes.size();
    std::vector<TrialOutcome> outcomes(n_cells * cfg.trials);

    TxPower power;
    power.papc = cfg.papc;
    power.p_per = cfg.p_per;
    power.p_total = cfg.p_total;

    auto run_trial = [&](std::size_t t) {
        Rng ch_rng(derive_seed(cfg.seed, t));
        // Angles and gains do not depend on the array size, so one draw serves every scheme.
        const auto proto = sample_channel(cfg.l_paths, 1, 1, ch_rng);
        for (std::size_t c = 0; c < schemes.size(); ++c)
        {
            const auto &sch = schemes[c];
            ChannelRealization ch = proto;
            ch.m_an = sch.tx->n_antennas;
            ch.n_an = sch.rx->n_antennas;
            const ComplexMatrix h = channel_matrix(ch);
            for (std::size_t p = 0; p < snr_db.size(); ++p)
            {
                SearchConfig sc;
                sc.l_s = cfg.l_s;
                sc.n0 = noise[p];
                sc.power = power;
                Rng rng(derive_seed(cfg.seed, t, p + 1, c + 1));
                const SearchResult res = hierarchical_search(*sch.tx, *sch.rx, h, sc, rng);
                TrialOutcome &o = outcomes[(p * schemes.size() + c) * cfg.trials + t];
                o.success = search_succeeded(res, ch, *sch.tx, *sch.rx);
                o.rate = achievable_rate(res, h, *sch.tx, *sch.rx, power, noise[p]);
            }
        }
    };

    const std::size_t workers = std::min(cfg.workers, cfg.trials);
    if (workers <= 1)
    {
        for (std::size_t t = 0; t < cfg.trials; ++t)
            run_trial(t);
    }
    else
    {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try
                {
                    for (std::size_t t = w; t < cfg.trials; t += workers)
                        run_trial(t);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        for (auto &th : pool)
            th.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    // Sequential reduction in trial order keeps the sums bit-identical for any worker count.
    std::vector<SweepRow> rows;
    rows.reserve(n_cells);
    const double n = static_cast<double>(cfg.trials);
    for (std::size_t p = 0; p < snr_db.size(); ++p)
        for (std::size_t c = 0; c < schemes.size(); ++c)
        {
            const TrialOutcome *o = &outcomes[(p * schemes.size() + c) * cfg.trials];
            double hits = 0.0, sum = 0.0, sum_sq = 0.0;
            for (std::size_t t = 0; t < cfg.trials; ++t)
            {
                hits += o[t].success ? 1.0 : 0.0;
                sum += o[t].rate;
                sum_sq += o[t].rate * o[t].rate;
            }
            SweepRow row;
            row.snr_db = snr_db[p];
            row.scheme = schemes[c].name;
            row.trials = cfg.trials;
            row.success_rate = hits / n;
            row.rate_bps_hz = sum / n;
            row.stderr_success = std::sqrt(row.success_rate * (1.0 - row.success_rate) / n);
            const double var = cfg.trials > 1 ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)) : 0.0;
            row.stderr_rate = std::sqrt(var / n);
            rows.push_back(std::move(row));
        }
    return rows;
}

std::vector<std::pair<double, double>> element_power_cdf(const std::vector<const HierarchicalCodebook *> &codebooks)
{
    if (codebooks.empty())
        throw PreconditionError("element_power_cdf: need at least one codebook");
    std::vector<double> powers;
    for (const auto *cb : codebooks)
    {
        if (cb == nullptr)
            throw PreconditionError("element_power_cdf: null codebook");
        for (std::size_t k = 1; k <= cb->depth(); ++k)
            for (const auto &e : cb->codeword(k, 1).unit_awv)
                powers.push_back(std::norm(e));
    }
    if (powers.empty())
        throw PreconditionError("element_power_cdf: codebooks have no layers below the root");
    std::sort(powers.begin(), powers.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(powers.size());
    const double total = static_cast<double>(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i)
        cdf.emplace_back(powers[i], static_cast<double>(i + 1) / total);
    return cdf;
}

} // namespace mmwcb
