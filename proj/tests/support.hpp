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

// Shared helpers for the unit suites.

#ifndef MMWCB_TESTS_SUPPORT_HPP
#define MMWCB_TESTS_SUPPORT_HPP

#include "mmwcb/array_core.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace mmwcb::test
{

inline Weights random_weights(std::size_t n, std::mt19937_64 &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto &x : v)
    {
        const double re = g(rng);
        const double im = g(rng);
        x = cplx(re, im);
    }
    return Weights(std::move(v));
}

inline Weights random_unit(std::size_t n, std::mt19937_64 &rng)
{
    return normalize(random_weights(n, rng), Normalization::UnitNorm);
}

/// Composite trapezoid of (1/2) * integral over [-1, 1] of |A|^2.
inline double parseval_mean(const Weights &w, std::size_t nodes)
{
    const auto grid = uniform_grid(-1.0, 1.0, nodes);
    const auto p = beam_pattern(w, grid);
    double s = 0.5 * (p.front() + p.back());
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        s += p[i];
    return s / static_cast<double>(nodes - 1);
}

// Reduces x to (-pi, pi].
inline double wrap_pi(double x)
{
    return std::remainder(x, 2.0 * pi);
}

} // namespace mmwcb::test

#endif
