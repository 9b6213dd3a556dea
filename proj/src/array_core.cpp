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

#include "mmwcb/array_core.hpp"
#include "mmwcb/error.hpp"

#include <algorithm>
#include <cmath>

namespace mmwcb
{

Weights::Weights(std::vector<cplx> entries) : entries_(std::move(entries))
{
    if (entries_.empty())
        throw InvalidDimension("Weights: antenna count must be at least 1");
    for (const auto &e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw PreconditionError("Weights: non-finite entry");
}

Weights Weights::scaled(cplx factor) const
{
    std::vector<cplx> out(entries_);
    for (auto &e : out)
        e *= factor;
    return Weights(std::move(out));
}

AngleInterval::AngleInterval(double start, double width) : start_(start), width_(width)
{
    if (!std::isfinite(start) || !std::isfinite(width))
        throw InvalidInterval("AngleInterval: non-finite bounds");
    if (!(width > 0.0))
        throw InvalidInterval("AngleInterval: width must be positive");
    if (start < -1.0 || start >= 1.0)
        throw InvalidInterval("AngleInterval: start must lie in [-1, 1)");
    if (start + width > 1.0 + 1e-12)
        throw InvalidInterval("AngleInterval: interval extends beyond +1");
}

double wrap_angle(double omega)
{
    double r = std::remainder(omega, 2.0); // [-1, 1]
    if (r >= 1.0)
        r -= 2.0;
    return r;
}

Weights steering_vector(std::size_t n_antennas, double omega)
{
    if (n_antennas == 0)
        throw InvalidDimension("steering_vector: antenna count must be at least 1");
    if (!std::isfinite(omega))
        throw PreconditionError("steering_vector: angle must be finite");

    const double amp = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    const double w = wrap_angle(omega);
    std::vector<cplx> out(n_antennas);
    for (std::size_t n = 0; n < n_antennas; ++n)
    {
        // Reduce the phase argument first so large n keeps full precision.
        const double turns = std::fmod(static_cast<double>(n) * w, 2.0);
        out[n] = std::polar(amp, pi * turns);
    }
    return Weights(std::move(out));
}

cplx beam_gain(const Weights &w, double omega)
{
    const double phase = -pi * wrap_angle(omega);
    const cplx z(std::cos(phase), std::sin(phase));
    // Horner: sum_n w_n z^(n-1)
    cplx acc(0.0, 0.0);
    for (std::size_t k = w.size(); k-- > 0;)
        acc = acc * z + w[k];
    return acc;
}

std::vector<double> beam_pattern(const Weights &w, std::span<const double> grid)
{
    if (grid.empty())
        throw PreconditionError("beam_pattern: empty angle grid");
    std::vector<double> out;
    out.reserve(grid.size());
    for (double omega : grid)
        out.push_back(std::norm(beam_gain(w, omega)));
    return out;
}

Weights phase_rotate(const Weights &w, double delta)
{
    const double d = wrap_angle(delta);
    std::vector<cplx> out(w.begin(), w.end());
    for (std::size_t n = 0; n < out.size(); ++n)
    {
        const double turns = std::fmod(static_cast<double>(n) * d, 2.0);
        out[n] *= std::polar(1.0, pi * turns);
    }
    return Weights(std::move(out));
}

double inf_norm_sq(const Weights &w)
{
    double m = 0.0;
    for (const auto &e : w)
        m = std::max(m, std::norm(e));
    return m;
}

double two_norm(const Weights &w)
{
    double s = 0.0;
    for (const auto &e : w)
        s += std::norm(e);
    return std::sqrt(s);
}

Weights normalize(const Weights &w, Normalization mode)
{
    const double scale = (mode == Normalization::UnitNorm) ? two_norm(w) : std::sqrt(inf_norm_sq(w));
    if (scale == 0.0)
        throw DegenerateInput("normalize: zero vector");
    return w.scaled(1.0 / scale);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count)
{
    if (count == 0)
        throw PreconditionError("uniform_grid: count must be positive");
    std::vector<double> out(count);
    if (count == 1)
    {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = lo + step * static_cast<double>(k);
    out.back() = hi;
    return out;
}

} // namespace mmwcb
