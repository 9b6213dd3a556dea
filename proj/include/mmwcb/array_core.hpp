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

#ifndef MMWCB_ARRAY_CORE_HPP
#define MMWCB_ARRAY_CORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mmwcb
{

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Antenna weight vector of a half-wave spaced ULA.
///
/// All angles used with it are cosine angles. The math contract indexes antennas from 1;
/// storage here is 0-based, so entry n of the math corresponds to `operator[](n - 1)`.
class Weights
{
public:
    /// Throws InvalidDimension when empty and PreconditionError on non-finite entries.
    explicit Weights(std::vector<cplx> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    const cplx &operator[](std::size_t k) const { return entries_[k]; }
    std::span<const cplx> entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    Weights scaled(cplx factor) const;

    friend bool operator==(const Weights &, const Weights &) = default;

private:
    std::vector<cplx> entries_;
};

/// Closed cosine-angle interval [start, start + width].
class AngleInterval
{
public:
    /// Throws InvalidInterval unless start in [-1, 1), width > 0 and start + width <= 1 + 1e-12.
    AngleInterval(double start, double width);

    double start() const noexcept { return start_; }
    double width() const noexcept { return width_; }
    double stop() const noexcept { return start_ + width_; }
    double center() const noexcept { return start_ + 0.5 * width_; }
    bool contains(double omega, double tol = 0.0) const noexcept
    {
        return omega >= start_ - tol && omega <= stop() + tol;
    }

    friend bool operator==(const AngleInterval &, const AngleInterval &) = default;

private:
    double start_;
    double width_;
};

/// Maps any finite cosine angle onto [-1, 1) using the period 2 of the array response.
double wrap_angle(double omega);

/// a(N, omega): entry n is exp(j*pi*(n-1)*omega) / sqrt(N).
Weights steering_vector(std::size_t n_antennas, double omega);

/// A(w, omega) = sum_n w_n exp(-j*pi*(n-1)*omega).
cplx beam_gain(const Weights &w, double omega);

/// |A(w, omega)|^2 sampled on `grid`.
std::vector<double> beam_pattern(const Weights &w, std::span<const double> grid);

/// Entrywise product with sqrt(N)*a(N, delta); shifts the pattern by +delta.
Weights phase_rotate(const Weights &w, double delta);

double inf_norm_sq(const Weights &w);
double two_norm(const Weights &w);

enum class Normalization
{
    UnitNorm, // ||w||_2 = 1
    Papc,     // ||w||_inf = 1, largest entry driven at the PA limit
};

/// Throws DegenerateInput for an all-zero vector.
Weights normalize(const Weights &w, Normalization mode);

/// Uniform grid of `count` points covering [lo, hi] inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

} // namespace mmwcb

#endif
