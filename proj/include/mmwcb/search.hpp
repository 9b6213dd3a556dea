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

#ifndef MMWCB_SEARCH_HPP
#define MMWCB_SEARCH_HPP

#include "mmwcb/channel.hpp"
#include "mmwcb/codebook.hpp"

#include <span>
#include <utility>
#include <vector>

namespace mmwcb
{

/// Transmit power policy. Under the per-antenna constraint each stream gets p_per / ||f||_inf^2
/// on its unit-norm codeword, so the strongest antenna sits exactly at the PA limit.
struct TxPower
{
    bool papc = true;
    double p_per = 1.0;
    double p_total = 1.0;

    double stream_power(const Weights &unit_f) const;
};

/// Correlator outputs rho (rows: Rx codewords i, cols: Tx codewords j) of one measurement:
/// rho_{i,j} = l_s sqrt(p_j) w_i^H H f_j + eta, eta ~ CN(0, l_s n0).
///
/// `tx` and `rx` hold unit-norm AWVs. Noise is drawn for every entry in row-major order, real
/// part first, even when n0 == 0, so a copy of `rng` replays the exact draw.
ComplexMatrix measure(std::span<const Weights> tx, std::span<const Weights> rx, const ComplexMatrix &h,
                      const TxPower &power, double n0, std::size_t l_s, Rng &rng);

/// (j*, i*), 1-based: argmax |rho_{i,j}|^2 with ties going to the smallest (j, i).
std::pair<std::size_t, std::size_t> select_best(const ComplexMatrix &rho);

struct SearchConfig
{
    std::size_t l_s = 128;
    double n0 = 1.0;
    TxPower power;
};

struct LayerStep
{
    std::size_t k = 0;
    std::size_t tx_layer = 0;
    std::size_t rx_layer = 0;
    std::size_t tx_composite = 0; // j_T entering the step
    std::size_t rx_composite = 0; // i_R entering the step
    ComplexMatrix rho;
    std::size_t j_star = 0;
    std::size_t i_star = 0;
};

struct SearchResult
{
    std::size_t j_t = 1; // bottom-layer Tx codeword
    std::size_t i_r = 1; // bottom-layer Rx codeword
    cplx rho_star;
    double tx_angle = 0.0; // psi estimate, -1 + (2 j_t - 1) / M_AN
    double rx_angle = 0.0; // Omega estimate, -1 + (2 i_r - 1) / N_AN
    std::size_t overhead = 0;
    std::size_t layers = 0;
    bool success = false; // set by the caller against the true channel
    std::vector<LayerStep> trace;

    /// Rank-one estimate rho* a(N_AN, rx_angle) a(M_AN, tx_angle)^H.
    ComplexMatrix estimate(std::size_t m_an, std::size_t n_an) const;
};

/// Divide-and-conquer beam search over two hierarchical codebooks. Runs
/// k_M = max(depth_tx, depth_rx) layers; a side that runs out of layers keeps transmitting
/// (or receiving with) its bottom-layer codeword.
SearchResult hierarchical_search(const HierarchicalCodebook &tx_cb, const HierarchicalCodebook &rx_cb,
                                 const ComplexMatrix &h, const SearchConfig &cfg, Rng &rng);

} // namespace mmwcb

#endif
