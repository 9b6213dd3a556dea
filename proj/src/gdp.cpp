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

#include "mmwcb/gdp.hpp"
#include "mmwcb/error.hpp"
#include "mmwcb/units.hpp"

#include <cmath>

namespace mmwcb
{

namespace
{
constexpr double kBoltzmann = 1.380649e-23; // J/K
}

void GdpConfig::validate() const
{
    if (!(gamma_per > 0.0) || !std::isfinite(gamma_per))
        throw PreconditionError("GdpConfig: gamma_per must be positive");
    if (integration_points && *integration_points < 256)
        throw PreconditionError("GdpConfig: integration_points must be at least 256");
}

std::size_t GdpConfig::points_for(std::size_t n_antennas) const
{
    return integration_points.value_or(512 * n_antennas);
}

std::size_t gdp_sample_count(std::size_t points_per_unit, double width)
{
    // Guard against ceil(8192 * 0.5000000000001) style rounding up by one node.
    const double raw = static_cast<double>(points_per_unit) * width;
    return static_cast<std::size_t>(std::ceil(raw - 1e-9)) + 1;
}

double gdp_from_profile(double c, std::span<const double> gain_sq, double gamma_per)
{
    if (gain_sq.size() < 2)
        throw PreconditionError("gdp_from_profile: need at least two samples");
    double acc = 0.5 * (gdp_integrand(c, gain_sq.front(), gamma_per) +
                        gdp_integrand(c, gain_sq.back(), gamma_per));
    for (std::size_t k = 1; k + 1 < gain_sq.size(); ++k)
        acc += gdp_integrand(c, gain_sq[k], gamma_per);
    return acc / static_cast<double>(gain_sq.size() - 1);
}

double gdp(const Weights &w, const AngleInterval &coverage, const GdpConfig &cfg)
{
    cfg.validate();
    const double norm = two_norm(w);
    if (std::abs(norm - 1.0) > 1e-9)
        throw PreconditionError("gdp: codeword must have unit 2-norm");

    const std::size_t count = gdp_sample_count(cfg.points_for(w.size()), coverage.width());
    const auto grid = uniform_grid(coverage.start(), coverage.stop(), count);
    const auto profile = beam_pattern(w, grid);
    return gdp_from_profile(inf_norm_sq(w), profile, cfg.gamma_per);
}

double mtp(const Weights &w, double p_per)
{
    const double c = inf_norm_sq(w);
    if (c == 0.0)
        throw DegenerateInput("mtp: zero vector");
    return p_per / c;
}

double ideal_gdp_bound(double c, double b)
{
    if (!(c > 0.0))
        throw PreconditionError("ideal_gdp_bound: c must be positive");
    if (!(b > 0.0) || b > 2.0)
        throw PreconditionError("ideal_gdp_bound: b must lie in (0, 2]");
    return std::exp(-c / (c + 2.0 / b));
}

void LinkBudget::validate() const
{
    const bool positive = carrier_wavelength_m > 0.0 && distance_m > 0.0 && bandwidth_hz > 0.0 &&
                          ambient_temp_k > 0.0 && training_length > 0.0 && pa_saturation_dbm > 0.0;
    if (!positive)
        throw PreconditionError("LinkBudget: physical quantities must be strictly positive");
    if (excess_loss_db < 0.0)
        throw PreconditionError("LinkBudget: excess loss must be non-negative");
}

LinkBudgetReport link_budget_report(const LinkBudget &lb)
{
    lb.validate();
    LinkBudgetReport r{};
    r.free_space_loss_db = 20.0 * std::log10(4.0 * pi * lb.distance_m / lb.carrier_wavelength_m);
    r.received_dbm = lb.pa_saturation_dbm - r.free_space_loss_db - lb.excess_loss_db;
    // kTB in W, expressed in mW
    r.noise_dbm = linear_to_db(kBoltzmann * lb.ambient_temp_k * lb.bandwidth_hz * 1e3);
    r.per_antenna_snr_db = r.received_dbm - r.noise_dbm;
    r.spreading_gain_db = linear_to_db(lb.training_length);
    r.gamma_per_db = r.per_antenna_snr_db + r.spreading_gain_db;
    return r;
}

double gamma_per_from_link_budget(const LinkBudget &lb)
{
    return db_to_linear(link_budget_report(lb).gamma_per_db);
}

} // namespace mmwcb
