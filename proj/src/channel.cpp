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

#include "mmwcb/channel.hpp"
#include "mmwcb/error.hpp"

#include <cmath>

namespace mmwcb
{

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(seed);
    h = mix(h ^ a);
    h = mix(h ^ b);
    h = mix(h ^ c);
    return h;
}

ComplexMatrix ComplexMatrix::scaled(cplx alpha) const
{
    ComplexMatrix out(*this);
    for (auto &e : out.v_)
        e *= alpha;
    return out;
}

std::size_t ChannelRealization::strongest() const
{
    if (paths.empty())
        throw PreconditionError("channel has no paths");
    std::size_t best = 0;
    for (std::size_t l = 1; l < paths.size(); ++l)
        if (std::norm(paths[l].gain) > std::norm(paths[best].gain))
            best = l;
    return best;
}

ChannelRealization sample_channel(std::size_t l_paths, std::size_t m_an, std::size_t n_an, Rng &rng)
{
    if (l_paths == 0)
        throw PreconditionError("sample_channel: need at least one path");
    if (m_an == 0 || n_an == 0)
        throw InvalidDimension("sample_channel: antenna counts must be positive");

    std::normal_distribution<double> normal(0.0, std::sqrt(0.5 / static_cast<double>(l_paths)));
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    ChannelRealization ch;
    ch.m_an = m_an;
    ch.n_an = n_an;
    ch.paths.reserve(l_paths);
    for (std::size_t l = 0; l < l_paths; ++l)
    {
        PathComponent p;
        const double re = normal(rng);
        const double im = normal(rng);
        p.gain = cplx(re, im);
        p.aoa = uniform(rng);
        p.aod = uniform(rng);
        ch.paths.push_back(p);
    }
    return ch;
}

ComplexMatrix channel_matrix(const ChannelRealization &ch)
{
    ComplexMatrix h(ch.n_an, ch.m_an);
    const double scale = std::sqrt(static_cast<double>(ch.m_an * ch.n_an));
    for (const auto &p : ch.paths)
    {
        const Weights ar = steering_vector(ch.n_an, p.aoa);
        const Weights at = steering_vector(ch.m_an, p.aod);
        for (std::size_t r = 0; r < ch.n_an; ++r)
        {
            const cplx left = scale * p.gain * ar[r];
            for (std::size_t c = 0; c < ch.m_an; ++c)
                h(r, c) += left * std::conj(at[c]);
        }
    }
    return h;
}

cplx bilinear(const Weights &w, const ComplexMatrix &h, const Weights &f)
{
    if (w.size() != h.rows() || f.size() != h.cols())
        throw DimensionMismatch("bilinear: codeword lengths do not match the channel matrix");
    cplx acc(0.0, 0.0);
    for (std::size_t r = 0; r < h.rows(); ++r)
    {
        cplx row(0.0, 0.0);
        for (std::size_t c = 0; c < h.cols(); ++c)
            row += h(r, c) * f[c];
        acc += std::conj(w[r]) * row;
    }
    return acc;
}

} // namespace mmwcb
