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

#include "mmwcb/codebook.hpp"
#include "mmwcb/error.hpp"
#include "mmwcb/gdp.hpp"
#include "mmwcb/units.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mmwcb;

TEST_CASE("narrow interval on a steering peak")
{
    for (std::size_t n : {2u, 8u, 32u})
    {
        const double om = 0.25;
        const AngleInterval iv(om - 5e-7, 1e-6);
        const double expect = std::exp(-1.0 / (1.0 + double(n * n)));
        CHECK(gdp(steering_vector(n, om), iv) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("sample counts")
{
    CHECK(gdp_sample_count(512, 1.0) == 513);
    CHECK(gdp_sample_count(512, 2.0) == 1025);
    CHECK(gdp_sample_count(300, 0.01) == 4);
    GdpConfig cfg;
    CHECK(cfg.points_for(32) == 512 * 32);
    cfg.integration_points = 1000;
    CHECK(cfg.points_for(32) == 1000);
}

TEST_CASE("gdp_from_profile is a trapezoid mean")
{
    const std::vector<double> g{0.0, 1.0, 4.0};
    const double c = 0.5;
    const double f0 = gdp_integrand(c, 0.0, 1.0);
    const double f1 = gdp_integrand(c, 1.0, 1.0);
    const double f2 = gdp_integrand(c, 4.0, 1.0);
    CHECK(gdp_from_profile(c, g, 1.0) == doctest::Approx((0.5 * f0 + f1 + 0.5 * f2) / 2.0));
    CHECK(f0 == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("gdp preconditions")
{
    CHECK_THROWS_AS(gdp(Weights({1.0, 1.0}), AngleInterval(-1.0, 2.0)), PreconditionError);
    GdpConfig bad;
    bad.gamma_per = 0.0;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad.gamma_per = 1.0;
    bad.integration_points = 10;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("gdp lies in (0, 1) and grows with gamma_per")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t)
    {
        const auto w = test::random_unit(8, rng);
        const AngleInterval iv(-0.5, 1.0);
        GdpConfig lo, hi;
        hi.gamma_per = db_to_linear(2.0);
        const double a = gdp(w, iv, lo);
        const double b = gdp(w, iv, hi);
        CHECK(a > 0.0);
        CHECK(b < 1.0);
        CHECK(b >= a);
    }
}

TEST_CASE("property: invariance to phase rotation")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t)
    {
        const std::size_t n = 4u << (t % 4);
        const auto w = test::random_unit(n, rng);
        const double width = 0.1 + 0.8 * u(rng);
        const double start = -1.0 + (2.0 - width) * u(rng);
        // Shift that keeps the interval inside [-1, 1].
        const double delta = (-1.0 - start) + (2.0 - width) * u(rng);
        const AngleInterval iv(start, width);
        const AngleInterval shifted(start + delta, width);
        CHECK(std::abs(gdp(phase_rotate(w, delta), shifted) - gdp(w, iv)) <= 1e-6);
    }
}

TEST_CASE("property: pointwise integrand monotone in C")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t)
    {
        const double c_small = 0.01 + 0.5 * u(rng);
        const double c_large = c_small + 0.5 * u(rng);
        const double gamma = db_to_linear(-10.0 + 20.0 * u(rng));
        for (int k = 0; k < 64; ++k)
        {
            const double g2 = 64.0 * u(rng);
            CHECK(gdp_integrand(c_small, g2, gamma) >= gdp_integrand(c_large, g2, gamma));
        }
    }
}

TEST_CASE("property: flat-sector bound")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t)
    {
        const auto w = test::random_unit(2 + t % 40, rng);
        const double width = 0.05 + 1.95 * u(rng);
        const AngleInterval iv(-1.0 + (2.0 - width) * u(rng), width);
        CHECK(gdp(w, iv) <= ideal_gdp_bound(inf_norm_sq(w), width) + 1e-6);
    }
}

TEST_CASE("mtp")
{
    CHECK(mtp(steering_vector(8, 0.0), 1.0) == doctest::Approx(8.0));
    CHECK(mtp(Weights({1.0, 0.0, 0.0}), 1.0) == 1.0);
    std::mt19937_64 rng(37);
    for (int t = 0; t < 50; ++t)
    {
        const auto w = test::random_unit(16, rng);
        CHECK(mtp(w, 2.0) < 16.0 * 2.0);
    }
    CHECK_THROWS_AS(mtp(Weights({0.0}), 1.0), DegenerateInput);
}

TEST_CASE("ideal bound")
{
    CHECK(ideal_gdp_bound(1.0 / 32.0, 2.0) == doctest::Approx(std::exp(-1.0 / 33.0)));
    CHECK(ideal_gdp_bound(1.0 / 32.0, 2.0) == doctest::Approx(0.970152).epsilon(1e-6));
    CHECK(ideal_gdp_bound(1.0, 2.0) == doctest::Approx(std::exp(-0.5)));
    for (double c = 0.01; c < 1.0; c += 0.05)
        for (double b = 0.05; b < 2.0; b += 0.05)
        {
            CHECK(ideal_gdp_bound(c + 0.01, b) < ideal_gdp_bound(c, b));
            // A narrower flat sector carries more gain (2 / b), so the bound falls as b widens.
            CHECK(ideal_gdp_bound(c, b + 0.01) < ideal_gdp_bound(c, b));
        }
    CHECK_THROWS_AS(ideal_gdp_bound(0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(ideal_gdp_bound(0.1, 2.5), PreconditionError);
}

TEST_CASE("quadrature convergence on generated codewords")
{
    auto check_book = [](const HierarchicalCodebook &cb) {
        GdpConfig base, fine;
        base.integration_points = 512 * cb.n_antennas;
        fine.integration_points = 1024 * cb.n_antennas;
        double worst = 0.0;
        for (const auto &layer : cb.layers)
            for (const auto &cw : layer.codewords)
                worst = std::max(worst, std::abs(gdp(cw.unit_awv, cw.coverage, base) -
                                                 gdp(cw.unit_awv, cw.coverage, fine)));
        INFO(scheme_name(cb.scheme), " N=", cb.n_antennas, " worst=", worst);
        CHECK(worst <= 1e-7);
    };
    for (std::size_t n : {8u, 16u, 32u, 64u})
    {
        check_book(build_codebook(Scheme::BmwMsCf, n, 2));
        check_book(build_codebook(Scheme::PsDft, n, 2));
    }
    for (std::size_t n : {8u, 16u})
        check_book(build_codebook(Scheme::BmwMsLcs, n, 2));
}

TEST_CASE("link budget arithmetic")
{
    const auto r = link_budget_report(LinkBudget{});
    CHECK(r.spreading_gain_db == doctest::Approx(10.0 * std::log10(128.0)));
    CHECK(r.free_space_loss_db == doctest::Approx(20.0 * std::log10(4.0 * pi * 1e4)));
    CHECK(r.received_dbm == doctest::Approx(-87.0).epsilon(0.01));
    // kTB at 100 MHz and 300 K, written out.
    CHECK(r.noise_dbm == doctest::Approx(10.0 * std::log10(1.380649e-23 * 300.0 * 1e8 * 1e3)));
    CHECK(r.gamma_per_db == doctest::Approx(r.received_dbm - r.noise_dbm + r.spreading_gain_db));
    CHECK(gamma_per_from_link_budget(LinkBudget{}) == doctest::Approx(db_to_linear(r.gamma_per_db)));

    LinkBudget lossy;
    lossy.excess_loss_db = 15.0;
    CHECK(link_budget_report(lossy).gamma_per_db == doctest::Approx(r.gamma_per_db - 15.0));
    lossy.distance_m = 0.0;
    CHECK_THROWS_AS(link_budget_report(lossy), PreconditionError);
}

TEST_CASE("dB conversions round-trip")
{
    for (double db = -80.0; db <= 80.0; db += 0.37)
        CHECK(std::abs(linear_to_db(db_to_linear(db)) - db) <= 1e-12 * std::max(1.0, std::abs(db)));
    for (double lin : {1e-9, 0.3, 1.0, 7.5, 1e6})
        CHECK(std::abs(db_to_linear(linear_to_db(lin)) - lin) <= 1e-12 * lin);
}
