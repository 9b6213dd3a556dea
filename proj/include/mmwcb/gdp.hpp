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

#ifndef MMWCB_GDP_HPP
#define MMWCB_GDP_HPP

#include "mmwcb/array_core.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace mmwcb
{

/// Detection threshold, normalized to the noise power. Not tunable.
inline constexpr double kDetectionThreshold = 1.0;

struct GdpConfig
{
    /// Per-antenna received SNR (linear). 1.0 is 0 dB.
    double gamma_per = 1.0;

    /// Trapezoid samples per unit cosine angle. Unset means 512 * N for an N-antenna codeword.
    std::optional<std::size_t> integration_points;

    /// Throws PreconditionError on gamma_per <= 0 or integration_points < 256.
    void validate() const;

    std::size_t points_for(std::size_t n_antennas) const;
};

/// Number of trapezoid nodes used over an interval of the given width.
std::size_t gdp_sample_count(std::size_t points_per_unit, double width);

/// exp(-Gamma * C / (C + gamma_per * |A|^2)); the integrand of the detection metric.
inline double gdp_integrand(double c, double gain_sq, double gamma_per)
{
    return std::exp(-kDetectionThreshold * c / (c + gamma_per * gain_sq));
}

/// Trapezoid mean of the integrand over uniformly spaced |A|^2 samples (endpoints included).
double gdp_from_profile(double c, std::span<const double> gain_sq, double gamma_per);

/// Generalized detection probability of a unit-norm codeword over `coverage`.
///
/// (1/B) * integral exp(-C / (C + gamma_per |A(w, psi)|^2)) dpsi with C = ||w||_inf^2,
/// evaluated by composite trapezoid on ceil(points * B) + 1 nodes.
/// Throws PreconditionError if | ||w||_2 - 1 | > 1e-9.
double gdp(const Weights &w, const AngleInterval &coverage, const GdpConfig &cfg = {});

/// Maximal transmission power p_per / ||w||_inf^2 under the per-antenna limit.
double mtp(const Weights &w, double p_per);

/// exp(-c / (c + 2 / b)); attained only by an ideal flat sector pattern.
double ideal_gdp_bound(double c, double b);

/// Friis-based link budget used to pick a representative per-antenna SNR.
struct LinkBudget
{
    double pa_saturation_dbm = 15.0;
    double carrier_wavelength_m = 0.01;
    double distance_m = 100.0;
    double bandwidth_hz = 100e6;
    double ambient_temp_k = 300.0;
    double training_length = 128.0;
    double excess_loss_db = 0.0;

    void validate() const;
};

struct LinkBudgetReport
{
    double free_space_loss_db;
    double received_dbm;
    double noise_dbm;
    double per_antenna_snr_db; // before spreading gain
    double spreading_gain_db;
    double gamma_per_db;
};

LinkBudgetReport link_budget_report(const LinkBudget &lb);

/// Linear per-antenna SNR including the training-sequence spreading gain.
double gamma_per_from_link_budget(const LinkBudget &lb);

} // namespace mmwcb

#endif
