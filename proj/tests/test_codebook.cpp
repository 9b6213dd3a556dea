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
#include "support.hpp"

#include <doctest.h>

using namespace mmwcb;

TEST_CASE("sub-array plan examples")
{
    const auto p = subarray_plan(32, 2, AngleInterval(-1.0, 2.0));
    CHECK(p.m_s == 4);
    CHECK(p.n_s == 8);
    CHECK(p.delta_theta == doctest::Approx(0.25));

    const double o = -1.0;
    const auto q = subarray_plan(16, 2, AngleInterval(o, 1.0));
    CHECK(q.m_s == 2);
    CHECK(q.n_s == 8);
    CHECK(q.delta_theta == doctest::Approx(0.25));
    CHECK(q.steering_angle(1, 1) == doctest::Approx(o + 0.125));
    CHECK(q.steering_angle(2, 1) == doctest::Approx(o + 0.375));
    CHECK(q.steering_angle(1, 2) == doctest::Approx(o + 0.625));
    CHECK(q.steering_angle(2, 2) == doctest::Approx(o + 0.875));
    CHECK(q.middle_angle(1, 1) == doctest::Approx(o + 0.25));

    // ceil(sqrt(8)) = 3 does not divide 32; the next divisor is used.
    const auto r = subarray_plan(32, 2, AngleInterval(-1.0, 1.0));
    CHECK(r.m_s == 4);
    CHECK(r.n_s == 8);
    CHECK(r.delta_theta == doctest::Approx(0.125));
    CHECK(r.delta_theta <= 2.0 / double(r.n_s));

    CHECK_THROWS_AS(subarray_plan(4, 8, AngleInterval(-1.0, 2.0)), PreconditionError);
}

TEST_CASE("plan spacing never exceeds the sub-array beam width")
{
    for (std::size_t n : {8u, 12u, 16u, 18u, 32u, 64u, 128u})
        for (std::size_t m_rf : {1u, 2u, 3u, 4u})
            for (double b : {2.0, 1.0, 0.5, 0.25, 0.125})
            {
                if (m_rf > n)
                    continue;
                const auto p = subarray_plan(n, m_rf, AngleInterval(-1.0, b));
                CHECK(p.m_s * p.n_s == n);
                CHECK(p.delta_theta <= 2.0 / double(p.n_s) + 1e-15);
            }
}

TEST_CASE("full-width chains collapse to one sub-array")
{
    // m_rf = B N / 2 gives m_s = 1, n_s = N, and CF phases along i form an equal-difference sequence.
    for (std::size_t n : {16u, 32u, 64u})
        for (double b : {1.0, 0.5, 0.25})
        {
            const auto m_rf = static_cast<std::size_t>(b * double(n) / 2.0);
            const auto p = subarray_plan(n, m_rf, AngleInterval(-1.0, b));
            CHECK(p.m_s == 1);
            CHECK(p.n_s == n);
            const auto th = cf_phases(p);
            for (std::size_t i = 2; i + 1 <= m_rf; ++i)
            {
                const double d1 = th(i, 1) - th(i - 1, 1);
                const double d2 = th(i + 1, 1) - th(i, 1);
                CHECK(std::abs(test::wrap_pi(d2 - d1)) < 1e-12);
            }
        }
}

TEST_CASE("closed-form phases on the two-by-two plan")
{
    const auto p = subarray_plan(16, 2, AngleInterval(-1.0, 1.0));
    const auto th = cf_phases(p);
    CHECK(std::abs(test::wrap_pi(th(1, 1) - 1.375 * pi)) < 1e-12);
    CHECK(std::abs(test::wrap_pi(th(2, 1) - 0.5 * pi)) < 1e-12);
    CHECK(std::abs(test::wrap_pi(th(1, 2) - 1.625 * pi)) < 1e-12);
    CHECK(std::abs(test::wrap_pi(th(2, 1) - th(1, 1) + 0.875 * pi)) < 1e-12);
    CHECK(std::abs(test::wrap_pi(th(1, 2) - th(2, 1) - 3.125 * pi)) < 1e-12);
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t m = 1; m <= 2; ++m)
        {
            CHECK(th(i, m) >= 0.0);
            CHECK(th(i, m) < 2.0 * pi);
        }
}

TEST_CASE("closed-form phase relations on every layer")
{
    for (std::size_t n : {8u, 16u, 32u, 64u})
    {
        const std::size_t depth = *log_base(n, 2);
        for (std::size_t k = 0; k <= depth; ++k)
        {
            const auto p = subarray_plan(n, 2, layer_coverage(2, k, 1));
            const auto th = cf_phases(p);
            const double step = -pi * double(p.n_s - 1) * p.delta_theta / 2.0;
            for (std::size_t m = 1; m <= p.m_s; ++m)
            {
                for (std::size_t i = 1; i < p.m_rf; ++i)
                    CHECK(std::abs(test::wrap_pi(th(i + 1, m) - th(i, m) - step)) < 1e-12);
                if (m < p.m_s)
                {
                    const double jump = step + pi * double(p.n_s * m * p.m_rf) * p.delta_theta;
                    CHECK(std::abs(test::wrap_pi(th(1, m + 1) - th(p.m_rf, m) - jump)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("assembled codewords")
{
    SUBCASE("constant amplitude")
    {
        for (std::size_t n : {8u, 32u})
        {
            const auto p = subarray_plan(n, 2, AngleInterval(-1.0, 1.0));
            const auto a = assemble_codeword(p, cf_phases(p));
            for (std::size_t c = 0; c < a.analog.cols(); ++c)
                for (std::size_t r = 0; r < a.analog.rows(); ++r)
                    CHECK(std::abs(std::abs(a.analog(r, c)) - 1.0 / std::sqrt(double(n))) < 1e-15);
        }
    }
    SUBCASE("single chain, single sub-array is a steering vector")
    {
        const auto p = subarray_plan(8, 1, AngleInterval(-0.5, 0.25));
        REQUIRE(p.m_s == 1);
        const auto a = assemble_codeword(p, PhaseMatrix(1, 1));
        const auto ref = steering_vector(8, p.steering_angle(1, 1));
        for (std::size_t r = 0; r < 8; ++r)
            CHECK(std::abs(a.awv[r] - ref[r]) < 1e-14);
    }
    SUBCASE("sub-array patterns peak at their steering angles")
    {
        const auto p = subarray_plan(16, 2, AngleInterval(-1.0, 1.0));
        const auto a = assemble_codeword(p, cf_phases(p));
        for (std::size_t i = 1; i <= p.m_rf; ++i)
            for (std::size_t m = 1; m <= p.m_s; ++m)
            {
                std::vector<cplx> block(16, 0.0);
                for (std::size_t r = (m - 1) * p.n_s; r < m * p.n_s; ++r)
                    block[r] = a.analog(r, i - 1);
                const Weights f(block);
                const double om = p.steering_angle(i, m);
                const double peak = std::abs(beam_gain(f, om));
                CHECK(peak == doctest::Approx(double(p.n_s) / std::sqrt(16.0)).epsilon(1e-12));
                CHECK(std::abs(beam_gain(f, om + 0.01)) < peak);
                CHECK(std::abs(beam_gain(f, om - 0.01)) < peak);
            }
    }
    SUBCASE("shape mismatch")
    {
        const auto p = subarray_plan(16, 2, AngleInterval(-1.0, 1.0));
        CHECK_THROWS_AS(assemble_codeword(p, PhaseMatrix(3, 2)), DimensionMismatch);
    }
}

TEST_CASE("LCS returns the grid argmax")
{
    const AngleInterval iv(-1.0, 1.0);
    const auto p = subarray_plan(8, 2, iv);
    const std::size_t g = 16;
    const GdpConfig cfg;
    const auto res = lcs_phases(p, iv, cfg, g);
    CHECK(res.objective == doctest::Approx(lcs_objective(p, iv, cfg, res.phi1, res.phi2)).epsilon(1e-12));
    const double step = 2.0 * pi / double(g);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
            CHECK(res.objective >= lcs_objective(p, iv, cfg, step * double(a), step * double(b)) - 1e-12);
    CHECK(res.theta == equal_difference_phases(p, res.phi1, res.phi2));
}

TEST_CASE("LCS with a single sub-array breaks ties at the origin")
{
    const AngleInterval iv(-0.5, 0.25);
    const auto p = subarray_plan(8, 1, iv);
    REQUIRE(p.m_s == 1);
    const auto res = lcs_phases(p, iv, GdpConfig{}, 32);
    CHECK(res.phi1 == 0.0);
    CHECK(res.phi2 == 0.0);
}

TEST_CASE("LCS coarse grid against a four-times finer grid")
{
    const AngleInterval iv(-1.0, 1.0);
    const auto p = subarray_plan(8, 2, iv);
    const GdpConfig cfg;
    const auto coarse = lcs_phases(p, iv, cfg, 64);
    const auto fine = lcs_phases(p, iv, cfg, 256);
    // Spread of the objective within one coarse cell around the fine optimum.
    const double cell = 2.0 * pi / 64.0;
    double spread = 0.0;
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b)
            spread = std::max(spread, std::abs(fine.objective - lcs_objective(p, iv, cfg, fine.phi1 + a * cell / 4,
                                                                               fine.phi2 + b * cell / 4)));
    CHECK(coarse.objective <= fine.objective + 1e-12);
    CHECK(fine.objective - coarse.objective <= spread);
}

TEST_CASE("LCS result does not depend on the worker count")
{
    const AngleInterval iv(-1.0, 1.0);
    const auto p = subarray_plan(16, 2, iv);
    const auto a = lcs_phases(p, iv, GdpConfig{}, 32, 1);
    const auto b = lcs_phases(p, iv, GdpConfig{}, 32, 3);
    CHECK(a.phi1 == b.phi1);
    CHECK(a.phi2 == b.phi2);
    CHECK(a.objective == b.objective);
    CHECK_THROWS_AS(lcs_phases(p, iv, GdpConfig{}, 4), PreconditionError);
}

TEST_CASE("layer coverage")
{
    CHECK(layer_coverage(2, 0, 1) == AngleInterval(-1.0, 2.0));
    CHECK(layer_coverage(2, 3, 5).start() == doctest::Approx(0.0));
    CHECK(layer_coverage(2, 3, 5).width() == doctest::Approx(0.25));
    CHECK(log_base(32, 2) == 5u);
    CHECK(log_base(27, 3) == 3u);
    CHECK_FALSE(log_base(12, 2).has_value());
}

namespace
{

void check_structure(const HierarchicalCodebook &cb)
{
    const std::size_t n = cb.n_antennas;
    const std::size_t m = cb.branching;
    REQUIRE(log_base(n, m).has_value());
    CHECK(cb.depth() == *log_base(n, m));
    std::size_t expect = 1;
    for (const auto &layer : cb.layers)
    {
        CHECK(layer.codewords.size() == expect);
        // tiling
        double edge = -1.0;
        for (std::size_t j = 0; j < layer.codewords.size(); ++j)
        {
            const auto &cw = layer.codewords[j];
            CHECK(cw.index == j + 1);
            CHECK(cw.coverage == layer_coverage(m, layer.k, j + 1));
            CHECK(cw.coverage.start() == doctest::Approx(edge).epsilon(1e-15));
            edge = cw.coverage.stop();
            CHECK(two_norm(cw.unit_awv) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(edge == doctest::Approx(1.0).epsilon(1e-15));

        const auto *shared = layer.composites.front().analog.get();
        for (const auto &comp : layer.composites)
        {
            CHECK(comp.analog.get() == shared);
            for (std::size_t c = 0; c < comp.analog->cols(); ++c)
                for (std::size_t r = 0; r < comp.analog->rows(); ++r)
                    CHECK(std::abs(std::abs((*comp.analog)(r, c)) - 1.0 / std::sqrt(double(n))) < 1e-9);
        }

        // Every codeword is a rotation of the first: identical modulus profile.
        const auto &first = layer.codewords.front().awv;
        for (const auto &cw : layer.codewords)
            for (std::size_t r = 0; r < n; ++r)
                CHECK(std::abs(std::abs(cw.awv[r]) - std::abs(first[r])) < 1e-12);
        expect *= m;
    }
}

} // namespace

TEST_CASE("BMW-MS codebook structure")
{
    const auto cb = build_bmw_ms(8, 2, Scheme::BmwMsCf);
    CHECK(cb.layers.size() == 4);
    check_structure(cb);
    check_structure(build_bmw_ms(8, 2, Scheme::BmwMsLcs));
    check_structure(build_bmw_ms(32, 2, Scheme::BmwMsCf));
    check_structure(build_bmw_ms(27, 3, Scheme::BmwMsCf));
    CHECK_THROWS_AS(build_bmw_ms(12, 2, Scheme::BmwMsCf), PreconditionError);
    CHECK_THROWS_AS(build_bmw_ms(8, 1, Scheme::BmwMsCf), PreconditionError);
    CHECK_THROWS_AS(build_bmw_ms(8, 2, Scheme::PsDft), PreconditionError);
}

TEST_CASE("codeword members follow their composite")
{
    const auto cb = build_bmw_ms(16, 2, Scheme::BmwMsCf);
    for (std::size_t k = 1; k <= cb.depth(); ++k)
        for (const auto &cw : cb.layers[k].codewords)
        {
            const auto &comp = cb.composite(k, cw.composite);
            CHECK(cw.awv == comp.member_awv(cw.member));
            CHECK((cw.composite - 1) * cb.branching + cw.member == cw.index);
        }
    CHECK_THROWS_AS(cb.codeword(1, 3), PreconditionError);
    CHECK_THROWS_AS(cb.composite(2, 3), PreconditionError);
}

TEST_CASE("PS-DFT codebook")
{
    const auto cb = build_ps_dft(32, 2);
    check_structure(cb);
    CHECK(cb.codeword(1, 1).coverage.width() == doctest::Approx(1.0));
    CHECK(cb.layers[1].design.rf_chains == 16);
    // bottom layer: steering vectors on the bin centres (up to a common phase)
    for (std::size_t n = 1; n <= 32; ++n)
    {
        const auto ref = steering_vector(32, -1.0 + (2.0 * double(n) - 1.0) / 32.0);
        cplx ip(0.0);
        const auto &w = cb.codeword(5, n).unit_awv;
        for (std::size_t r = 0; r < 32; ++r)
            ip += std::conj(ref[r]) * w[r];
        CHECK(std::abs(ip) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // element powers spread wider than BMW-MS
    const auto bmw = build_bmw_ms(32, 2, Scheme::BmwMsCf);
    CHECK(inf_norm_sq(cb.codeword(1, 1).unit_awv) > 2.0 * inf_norm_sq(bmw.codeword(1, 1).unit_awv));
}

TEST_CASE("in-coverage gain floor between the outer steering angles")
{
    for (std::size_t n : {16u, 32u})
    {
        const auto cb = build_bmw_ms(n, 2, Scheme::BmwMsCf);
        for (const auto &layer : cb.layers)
        {
            const auto &cw = layer.codewords.front();
            const double b = cw.coverage.width();
            const double half = layer.design.delta_theta / 2.0;
            const auto grid = uniform_grid(cw.coverage.start() + half, cw.coverage.stop() - half, 4001);
            const auto pat = beam_pattern(cw.unit_awv, grid);
            const double lo = *std::min_element(pat.begin(), pat.end());
            INFO("N=", n, " k=", layer.k, " min=", lo, " floor=", 0.6 / b);
            CHECK(lo >= 0.3 * 2.0 / b);
        }
    }
}

TEST_CASE("dispatcher and scheme names")
{
    CHECK(scheme_name(Scheme::BmwMsCf) == "BMW-MS/CF");
    CHECK(parse_scheme("PS-DFT") == Scheme::PsDft);
    CHECK_FALSE(parse_scheme("SPARSE").has_value());
    CHECK(build_codebook(Scheme::PsDft, 8, 2).scheme == Scheme::PsDft);
    CHECK(build_codebook(Scheme::BmwMsLcs, 8, 2).scheme == Scheme::BmwMsLcs);
}
