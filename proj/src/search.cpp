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

#include "mmwcb/search.hpp"
#include "mmwcb/error.hpp"

#include <algorithm>
#include <cmath>

namespace mmwcb
{

double TxPower::stream_power(const Weights &unit_f) const
{
    return papc ? mtp(unit_f, p_per) : p_total;
}

ComplexMatrix measure(std::span<const Weights> tx, std::span<const Weights> rx, const ComplexMatrix &h,
                      const TxPower &power, double n0, std::size_t l_s, Rng &rng)
{
    if (tx.empty() || rx.empty())
        throw PreconditionError("measure: need at least one Tx and one Rx codeword");
    if (l_s < tx.size())
        throw PreconditionError("measure: training length must be at least the number of Tx streams");
    if (n0 < 0.0)
        throw PreconditionError("measure: noise power must be non-negative");
    for (const auto &w : rx)
        if (std::abs(two_norm(w) - 1.0) > 1e-9)
            throw PreconditionError("measure: Rx codewords must have unit norm");

    const double ls = static_cast<double>(l_s);
    std::vector<double> amp(tx.size());
    for (std::size_t j = 0; j < tx.size(); ++j)
        amp[j] = ls * std::sqrt(power.stream_power(tx[j]));

    ComplexMatrix rho(rx.size(), tx.size());
    for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < tx.size(); ++j)
            rho(i, j) = amp[j] * bilinear(rx[i], h, tx[j]);

    std::normal_distribution<double> normal(0.0, 1.0);
    const double sigma = std::sqrt(0.5 * ls * n0);
    for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < tx.size(); ++j)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            rho(i, j) += sigma * cplx(re, im);
        }
    return rho;
}

std::pair<std::size_t, std::size_t> select_best(const ComplexMatrix &rho)
{
    if (rho.rows() == 0 || rho.cols() == 0)
        throw PreconditionError("select_best: empty correlator matrix");
    std::size_t bj = 0;
    std::size_t bi = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < rho.cols(); ++j)
        for (std::size_t i = 0; i < rho.rows(); ++i)
        {
            const double p = std::norm(rho(i, j));
            if (p > best)
            {
                best = p;
                bj = j;
                bi = i;
            }
        }
    return {bj + 1, bi + 1};
}

ComplexMatrix SearchResult::estimate(std::size_t m_an, std::size_t n_an) const
{
    const Weights ar = steering_vector(n_an, rx_angle);
    const Weights at = steering_vector(m_an, tx_angle);
    ComplexMatrix h(n_an, m_an);
    for (std::size_t r = 0; r < n_an; ++r)
        for (std::size_t c = 0; c < m_an; ++c)
            h(r, c) = rho_star * ar[r] * std::conj(at[c]);
    return h;
}

namespace
{

// Codewords radiated at step k given the composite / codeword index carried in from step k-1.
std::vector<Weights> active_codewords(const HierarchicalCodebook &cb, std::size_t k, std::size_t index)
{
    std::vector<Weights> out;
    if (k <= cb.depth())
    {
        const auto &comp = cb.composite(k, index);
        for (std::size_t j = 1; j <= comp.members(); ++j)
            out.push_back(cb.codeword(k, (index - 1) * cb.branching + j).unit_awv);
    }
    else
        out.push_back(cb.codeword(cb.depth(), index).unit_awv);
    return out;
}

} // namespace

SearchResult hierarchical_search(const HierarchicalCodebook &tx_cb, const HierarchicalCodebook &rx_cb,
                                 const ComplexMatrix &h, const SearchConfig &cfg, Rng &rng)
{
    if (tx_cb.layers.empty() || rx_cb.layers.empty())
        throw PreconditionError("hierarchical_search: empty codebook");
    if (h.cols() != tx_cb.n_antennas || h.rows() != rx_cb.n_antennas)
        throw DimensionMismatch("hierarchical_search: channel size does not match the codebooks");

    const std::size_t k_max = std::max(tx_cb.depth(), rx_cb.depth());
    SearchResult res;
    std::size_t j_t = 1;
    std::size_t i_r = 1;

    for (std::size_t k = 1; k <= k_max; ++k)
    {
        const auto tx = active_codewords(tx_cb, k, j_t);
        const auto rx = active_codewords(rx_cb, k, i_r);

        LayerStep step;
        step.k = k;
        step.tx_layer = std::min(k, tx_cb.depth());
        step.rx_layer = std::min(k, rx_cb.depth());
        step.tx_composite = j_t;
        step.rx_composite = i_r;
        step.rho = measure(tx, rx, h, cfg.power, cfg.n0, cfg.l_s, rng);
        const auto [j_star, i_star] = select_best(step.rho);
        step.j_star = j_star;
        step.i_star = i_star;

        if (k <= rx_cb.depth())
            i_r = rx_cb.branching * (i_r - 1) + i_star;
        if (k <= tx_cb.depth())
            j_t = tx_cb.branching * (j_t - 1) + j_star;

        res.rho_star = step.rho(i_star - 1, j_star - 1);
        res.trace.push_back(std::move(step));
    }

    res.j_t = j_t;
    res.i_r = i_r;
    res.layers = k_max;
    res.overhead = cfg.l_s * k_max;
    res.tx_angle = -1.0 + (2.0 * static_cast<double>(j_t) - 1.0) / static_cast<double>(tx_cb.n_antennas);
    res.rx_angle = -1.0 + (2.0 * static_cast<double>(i_r) - 1.0) / static_cast<double>(rx_cb.n_antennas);
    return res;
}

} // namespace mmwcb
