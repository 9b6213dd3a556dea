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

#ifndef MMWCB_CHANNEL_HPP
#define MMWCB_CHANNEL_HPP

#include "mmwcb/array_core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mmwcb
{

using Rng = std::mt19937_64;

/// SplitMix64 finalizer chain; maps (seed, a, b, c) to an independent substream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Row-major dense complex matrix.
class ComplexMatrix
{
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    cplx &operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    ComplexMatrix scaled(cplx alpha) const;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> v_;
};

struct PathComponent
{
    cplx gain;         // lambda
    double aoa = 0.0;  // Omega, receive cosine angle
    double aod = 0.0;  // psi, transmit cosine angle
};

struct ChannelRealization
{
    std::vector<PathComponent> paths;
    std::size_t m_an = 0; // Tx antennas
    std::size_t n_an = 0; // Rx antennas

    /// Index of the path with the largest |lambda|.
    std::size_t strongest() const;
};

/// L paths with lambda ~ CN(0, 1/L) and AoA/AoD uniform on [-1, 1].
ChannelRealization sample_channel(std::size_t l_paths, std::size_t m_an, std::size_t n_an, Rng &rng);

/// H = sqrt(m_an n_an) sum_l lambda_l a(n_an, Omega_l) a(m_an, psi_l)^H, n_an x m_an.
ComplexMatrix channel_matrix(const ChannelRealization &ch);

/// w^H H f
cplx bilinear(const Weights &w, const ComplexMatrix &h, const Weights &f);

} // namespace mmwcb

#endif
