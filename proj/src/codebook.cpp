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

#include <algorithm>
#include <cmath>
#include <thread>

namespace mmwcb
{

std::string_view scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::BmwMsCf:
        return "BMW-MS/CF";
    case Scheme::BmwMsLcs:
        return "BMW-MS/LCS";
    case Scheme::PsDft:
        return "PS-DFT";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view tag)
{
    if (tag == "BMW-MS/CF")
        return Scheme::BmwMsCf;
    if (tag == "BMW-MS/LCS")
        return Scheme::BmwMsLcs;
    if (tag == "PS-DFT")
        return Scheme::PsDft;
    return std::nullopt;
}

// ------------------------------------------------------------------------
// Sub-array geometry

double SubArrayPlan::steering_angle(std::size_t i, std::size_t m) const
{
    return start + (static_cast<double>(i) - 0.5) * delta_theta +
           static_cast<double>((m - 1) * m_rf) * delta_theta;
}

double SubArrayPlan::middle_angle(std::size_t i, std::size_t m) const
{
    return start + static_cast<double>(i) * delta_theta + static_cast<double>((m - 1) * m_rf) * delta_theta;
}

SubArrayPlan subarray_plan(std::size_t n_antennas, std::size_t m_rf, const AngleInterval &interval)
{
    if (m_rf == 0 || n_antennas < m_rf)
        throw PreconditionError("subarray_plan: need N >= m_rf >= 1");
    const double b = interval.width();
    if (b > 2.0 + 1e-12)
        throw PreconditionError("subarray_plan: interval width must lie in (0, 2]");

    const double n = static_cast<double>(n_antennas);
    const double bound = std::sqrt(b * n / (2.0 * static_cast<double>(m_rf)));
    const auto min_ms = static_cast<std::size_t>(std::max(1.0, std::ceil(bound - 1e-9)));

    for (std::size_t m_s = min_ms; m_s <= n_antennas; ++m_s)
    {
        if (n_antennas % m_s != 0)
            continue;
        const std::size_t n_s = n_antennas / m_s;
        const double dtheta = b / static_cast<double>(m_rf * m_s);
        if (dtheta > 2.0 / static_cast<double>(n_s) + 1e-12)
            continue;
        SubArrayPlan plan;
        plan.n_antennas = n_antennas;
        plan.m_rf = m_rf;
        plan.m_s = m_s;
        plan.n_s = n_s;
        plan.start = interval.start();
        plan.width = b;
        plan.delta_theta = dtheta;
        return plan;
    }
    throw InfeasibleGeometry("subarray_plan: no divisor of N yields sub-arrays narrow enough for the interval");
}

namespace
{

double wrap_phase(double theta)
{
    double r = std::fmod(theta, 2.0 * pi);
    if (r < 0.0)
        r += 2.0 * pi;
    if (r >= 2.0 * pi)
        r -= 2.0 * pi;
    return r;
}

void check_plan(const SubArrayPlan &plan)
{
    if (plan.m_rf == 0 || plan.m_s == 0 || plan.n_s == 0 || plan.m_s * plan.n_s != plan.n_antennas)
        throw PreconditionError("sub-array plan is inconsistent");
}

} // namespace

PhaseMatrix cf_phases(const SubArrayPlan &plan)
{
    check_plan(plan);
    const double ns = static_cast<double>(plan.n_s);
    const double mrf = static_cast<double>(plan.m_rf);
    const double dt = plan.delta_theta;

    PhaseMatrix theta(plan.m_rf, plan.m_s);
    for (std::size_t i = 1; i <= plan.m_rf; ++i)
        for (std::size_t m = 1; m <= plan.m_s; ++m)
        {
            const double md = static_cast<double>(m);
            const double raw = pi * md * (md - 1.0) * ns * mrf * dt / 2.0 -
                               pi * (md * mrf + static_cast<double>(i)) * (ns - 1.0) * dt / 2.0;
            theta(i, m) = wrap_phase(raw);
        }
    return theta;
}

// ------------------------------------------------------------------------
// Assembly

Weights AnalogMatrix::column(std::size_t c) const
{
    return Weights(std::vector<cplx>(v_.begin() + static_cast<std::ptrdiff_t>(c * rows_),
                                     v_.begin() + static_cast<std::ptrdiff_t>((c + 1) * rows_)));
}

Weights AnalogMatrix::combine(cplx scale) const
{
    std::vector<cplx> out(rows_, cplx(0.0, 0.0));
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] += (*this)(r, c);
    for (auto &e : out)
        e *= scale;
    return Weights(std::move(out));
}

AssembledCodeword assemble_codeword(const SubArrayPlan &plan, const PhaseMatrix &theta)
{
    check_plan(plan);
    if (theta.m_rf() != plan.m_rf || theta.m_s() != plan.m_s)
        throw DimensionMismatch("assemble_codeword: phase matrix does not match the plan");

    const std::size_t n = plan.n_antennas;
    const double amp = 1.0 / std::sqrt(static_cast<double>(n)); // sqrt(n_s/N) * 1/sqrt(n_s)
    AnalogMatrix analog(n, plan.m_rf);
    for (std::size_t i = 1; i <= plan.m_rf; ++i)
        for (std::size_t m = 1; m <= plan.m_s; ++m)
        {
            const double omega = wrap_angle(plan.steering_angle(i, m));
            const double th = theta(i, m);
            for (std::size_t k = 0; k < plan.n_s; ++k)
            {
                const double ramp = std::fmod(static_cast<double>(k) * omega, 2.0);
                analog((m - 1) * plan.n_s + k, i - 1) = std::polar(amp, th + pi * ramp);
            }
        }
    Weights awv = analog.combine(1.0);
    return AssembledCodeword{std::move(analog), std::move(awv)};
}

// ------------------------------------------------------------------------
// Low-complexity search

PhaseMatrix equal_difference_phases(const SubArrayPlan &plan, double phi1, double phi2)
{
    PhaseMatrix theta(plan.m_rf, plan.m_s);
    for (std::size_t i = 1; i <= plan.m_rf; ++i)
        for (std::size_t m = 1; m <= plan.m_s; ++m)
            theta(i, m) = static_cast<double>(m) * phi1 + static_cast<double>(i) * phi2;
    return theta;
}

double lcs_objective(const SubArrayPlan &plan, const AngleInterval &interval, const GdpConfig &cfg,
                     double phi1, double phi2)
{
    const auto assembled = assemble_codeword(plan, equal_difference_phases(plan, phi1, phi2));
    return gdp(normalize(assembled.awv, Normalization::UnitNorm), interval, cfg);
}

namespace
{

// Beam gains of every unit-phase sub-array on the GDP grid, so a candidate (phi1, phi2)
// costs samples * sub-arrays instead of samples * N.
class LcsEvaluator
{
public:
    LcsEvaluator(const SubArrayPlan &plan, const AngleInterval &interval, const GdpConfig &cfg)
        : plan_(plan), gamma_(cfg.gamma_per), terms_(plan.m_rf * plan.m_s)
    {
        const std::size_t count = gdp_sample_count(cfg.points_for(plan.n_antennas), interval.width());
        grid_ = uniform_grid(interval.start(), interval.stop(), count);

        const auto unit = assemble_codeword(plan, PhaseMatrix(plan.m_rf, plan.m_s));
        blocks_.resize(terms_ * plan.n_s);
        basis_.resize(grid_.size() * terms_);
        for (std::size_t i = 1; i <= plan.m_rf; ++i)
            for (std::size_t m = 1; m <= plan.m_s; ++m)
            {
                const std::size_t t = term(i, m);
                std::vector<cplx> embedded(plan.n_antennas, cplx(0.0, 0.0));
                for (std::size_t k = 0; k < plan.n_s; ++k)
                {
                    const std::size_t row = (m - 1) * plan.n_s + k;
                    embedded[row] = unit.analog(row, i - 1);
                    blocks_[t * plan.n_s + k] = unit.analog(row, i - 1);
                }
                const Weights sub(std::move(embedded));
                for (std::size_t s = 0; s < grid_.size(); ++s)
                    basis_[s * terms_ + t] = beam_gain(sub, grid_[s]);
            }
        profile_.resize(grid_.size());
        phasor_.resize(terms_);
    }

    double operator()(double phi1, double phi2)
    {
        for (std::size_t i = 1; i <= plan_.m_rf; ++i)
            for (std::size_t m = 1; m <= plan_.m_s; ++m)
                phasor_[term(i, m)] = std::polar(1.0, static_cast<double>(m) * phi1 + static_cast<double>(i) * phi2);

        // Norms of the assembled vector, block by block.
        double energy = 0.0;
        double peak = 0.0;
        for (std::size_t m = 1; m <= plan_.m_s; ++m)
            for (std::size_t k = 0; k < plan_.n_s; ++k)
            {
                cplx e(0.0, 0.0);
                for (std::size_t i = 1; i <= plan_.m_rf; ++i)
                    e += phasor_[term(i, m)] * blocks_[term(i, m) * plan_.n_s + k];
                const double p = std::norm(e);
                energy += p;
                peak = std::max(peak, p);
            }
        if (energy == 0.0)
            return 0.0;

        const double inv = 1.0 / energy;
        for (std::size_t s = 0; s < grid_.size(); ++s)
        {
            const cplx *b = &basis_[s * terms_];
            cplx a(0.0, 0.0);
            for (std::size_t t = 0; t < terms_; ++t)
                a += phasor_[t] * b[t];
            profile_[s] = std::norm(a) * inv;
        }
        return gdp_from_profile(peak * inv, profile_, gamma_);
    }

private:
    std::size_t term(std::size_t i, std::size_t m) const { return (i - 1) * plan_.m_s + (m - 1); }

    SubArrayPlan plan_;
    double gamma_;
    std::size_t terms_;
    std::vector<double> grid_;
    std::vector<cplx> blocks_;
    std::vector<cplx> basis_;
    std::vector<double> profile_;
    std::vector<cplx> phasor_;
};

constexpr double kTieTolerance = 1e-13;

} // namespace

LcsResult lcs_phases(const SubArrayPlan &plan, const AngleInterval &interval, const GdpConfig &cfg,
                     std::size_t grid_size, std::size_t workers)
{
    check_plan(plan);
    cfg.validate();
    if (grid_size < 8)
        throw PreconditionError("lcs_phases: grid_size must be at least 8");

    const double step = 2.0 * pi / static_cast<double>(grid_size);
    std::vector<double> table(grid_size * grid_size);

    auto run_rows = [&](std::size_t first, std::size_t stride) {
        LcsEvaluator eval(plan, interval, cfg);
        for (std::size_t a1 = first; a1 < grid_size; a1 += stride)
            for (std::size_t a2 = 0; a2 < grid_size; ++a2)
                table[a1 * grid_size + a2] = eval(step * static_cast<double>(a1), step * static_cast<double>(a2));
    };

    workers = std::clamp<std::size_t>(workers, 1, grid_size);
    if (workers == 1)
        run_rows(0, 1);
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(run_rows, w, workers);
        for (auto &t : pool)
            t.join();
    }

    // Scan in lexicographic order once all values exist, so ties resolve independently of threading.
    std::size_t best = 0;
    for (std::size_t k = 1; k < table.size(); ++k)
        if (table[k] > table[best] + kTieTolerance)
            best = k;

    LcsResult r;
    r.phi1 = step * static_cast<double>(best / grid_size);
    r.phi2 = step * static_cast<double>(best % grid_size);
    r.theta = equal_difference_phases(plan, r.phi1, r.phi2);
    r.objective = table[best];
    return r;
}

// ------------------------------------------------------------------------
// Codebook structure

Weights CompositeCodeword::member_awv(std::size_t j) const
{
    if (j == 0 || j > rotations.size())
        throw PreconditionError("member_awv: member index out of range");
    return phase_rotate(analog->combine(digital_scale), rotations[j - 1]);
}

AngleInterval layer_coverage(std::size_t branching, std::size_t k, std::size_t n)
{
    const double count = std::pow(static_cast<double>(branching), static_cast<double>(k));
    const double width = 2.0 / count;
    return AngleInterval(-1.0 + static_cast<double>(n - 1) * width, width);
}

const Codeword &HierarchicalCodebook::codeword(std::size_t k, std::size_t n) const
{
    if (k >= layers.size() || n == 0 || n > layers[k].codewords.size())
        throw PreconditionError("codeword index out of range");
    return layers[k].codewords[n - 1];
}

const CompositeCodeword &HierarchicalCodebook::composite(std::size_t k, std::size_t i) const
{
    if (k >= layers.size() || i == 0 || i > layers[k].composites.size())
        throw PreconditionError("composite index out of range");
    return layers[k].composites[i - 1];
}

void rebuild_codewords(HierarchicalCodebook &cb)
{
    for (auto &layer : cb.layers)
    {
        layer.codewords.clear();
        for (const auto &comp : layer.composites)
            for (std::size_t j = 1; j <= comp.members(); ++j)
            {
                Codeword cw;
                cw.layer = layer.k;
                cw.composite = comp.index;
                cw.member = j;
                cw.index = (comp.index - 1) * (layer.k == 0 ? 1 : cb.branching) + j;
                cw.awv = comp.member_awv(j);
                cw.unit_awv = normalize(cw.awv, Normalization::UnitNorm);
                cw.coverage = comp.coverages[j - 1];
                layer.codewords.push_back(std::move(cw));
            }
        std::sort(layer.codewords.begin(), layer.codewords.end(),
                  [](const Codeword &a, const Codeword &b) { return a.index < b.index; });
    }
}

std::optional<std::size_t> log_base(std::size_t n, std::size_t m)
{
    if (m < 2 || n == 0)
        return std::nullopt;
    std::size_t k = 0;
    std::size_t p = 1;
    while (p < n)
    {
        p *= m;
        ++k;
    }
    if (p != n)
        return std::nullopt;
    return k;
}

namespace
{

// Layer k composites share one analog matrix; members are the phase-rotated copies of codeword 1.
void fill_layer(Layer &layer, std::size_t branching, std::shared_ptr<const AnalogMatrix> analog,
                double digital_scale)
{
    const std::size_t k = layer.k;
    if (k == 0)
    {
        CompositeCodeword comp;
        comp.layer = 0;
        comp.index = 1;
        comp.analog = analog;
        comp.digital_scale = digital_scale;
        comp.rotations = {0.0};
        comp.coverages = {layer_coverage(branching, 0, 1)};
        layer.composites.push_back(std::move(comp));
        return;
    }

    const auto count = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(branching), static_cast<double>(k))));
    for (std::size_t i = 1; i <= count / branching; ++i)
    {
        CompositeCodeword comp;
        comp.layer = k;
        comp.index = i;
        comp.analog = analog;
        comp.digital_scale = digital_scale;
        for (std::size_t j = 1; j <= branching; ++j)
        {
            const std::size_t n = (i - 1) * branching + j;
            comp.rotations.push_back(2.0 * static_cast<double>(n - 1) / static_cast<double>(count));
            comp.coverages.push_back(layer_coverage(branching, k, n));
        }
        layer.composites.push_back(std::move(comp));
    }
}

} // namespace

HierarchicalCodebook build_bmw_ms(std::size_t n_antennas, std::size_t m_rf, Scheme scheme,
                                  const GdpConfig &cfg, std::size_t grid_size, std::size_t workers)
{
    if (scheme == Scheme::PsDft)
        throw PreconditionError("build_bmw_ms: PS-DFT is built by build_ps_dft");
    if (m_rf < 2)
        throw PreconditionError("build_bmw_ms: need at least two RF chains");
    const auto depth = log_base(n_antennas, m_rf);
    if (!depth)
        throw PreconditionError("build_bmw_ms: N must be a power of m_rf");
    cfg.validate();

    HierarchicalCodebook cb;
    cb.scheme = scheme;
    cb.n_antennas = n_antennas;
    cb.branching = m_rf;
    cb.grid_size = grid_size;
    cb.gamma_per = cfg.gamma_per;

    for (std::size_t k = 0; k <= *depth; ++k)
    {
        const AngleInterval target = layer_coverage(m_rf, k, 1);
        const SubArrayPlan plan = subarray_plan(n_antennas, m_rf, target);

        Layer layer;
        layer.k = k;
        layer.design.m_s = plan.m_s;
        layer.design.n_s = plan.n_s;
        layer.design.rf_chains = m_rf;
        layer.design.delta_theta = plan.delta_theta;

        PhaseMatrix theta(1, 1);
        if (scheme == Scheme::BmwMsCf)
            theta = cf_phases(plan);
        else
        {
            const LcsResult lcs = lcs_phases(plan, target, cfg, grid_size, workers);
            theta = lcs.theta;
            layer.design.phi1 = lcs.phi1;
            layer.design.phi2 = lcs.phi2;
        }

        auto assembled = assemble_codeword(plan, theta);
        fill_layer(layer, m_rf, std::make_shared<const AnalogMatrix>(std::move(assembled.analog)), 1.0);
        cb.layers.push_back(std::move(layer));
    }
    rebuild_codewords(cb);
    return cb;
}

namespace
{

AnalogMatrix ps_dft_columns(std::size_t n_antennas, std::size_t chains, double phi)
{
    AnalogMatrix analog(n_antennas, chains);
    const double nd = static_cast<double>(n_antennas);
    for (std::size_t i = 1; i <= chains; ++i)
    {
        const Weights a = steering_vector(n_antennas, -1.0 + (2.0 * static_cast<double>(i) - 1.0) / nd);
        const cplx rot = std::polar(1.0, static_cast<double>(i) * phi);
        for (std::size_t r = 0; r < n_antennas; ++r)
            analog(r, i - 1) = rot * a[r];
    }
    return analog;
}

} // namespace

HierarchicalCodebook build_ps_dft(std::size_t n_antennas, std::size_t branching, std::size_t grid_size,
                                  const GdpConfig &cfg)
{
    const auto depth = log_base(n_antennas, branching);
    if (!depth)
        throw PreconditionError("build_ps_dft: N must be a power of the branching factor");
    if (grid_size < 1)
        throw PreconditionError("build_ps_dft: grid_size must be positive");
    cfg.validate();

    HierarchicalCodebook cb;
    cb.scheme = Scheme::PsDft;
    cb.n_antennas = n_antennas;
    cb.branching = branching;
    cb.grid_size = grid_size;
    cb.gamma_per = cfg.gamma_per;

    const double step = 2.0 * pi / static_cast<double>(grid_size);
    for (std::size_t k = 0; k <= *depth; ++k)
    {
        const std::size_t count = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(branching), static_cast<double>(k))));
        const std::size_t chains = n_antennas / count;
        const double scale = 1.0 / std::sqrt(static_cast<double>(chains));
        const AngleInterval target = layer_coverage(branching, k, 1);

        std::size_t best = 0;
        double best_value = -1.0;
        for (std::size_t t = 0; t < grid_size; ++t)
        {
            const double phi = step * static_cast<double>(t);
            const Weights w = normalize(ps_dft_columns(n_antennas, chains, phi).combine(scale), Normalization::UnitNorm);
            const double value = gdp(w, target, cfg);
            if (value > best_value + kTieTolerance)
            {
                best = t;
                best_value = value;
            }
        }

        Layer layer;
        layer.k = k;
        layer.design.m_s = 1;
        layer.design.n_s = n_antennas;
        layer.design.rf_chains = chains;
        layer.design.delta_theta = 2.0 / static_cast<double>(n_antennas);
        layer.design.phi1 = step * static_cast<double>(best);
        fill_layer(layer, branching,
                   std::make_shared<const AnalogMatrix>(ps_dft_columns(n_antennas, chains, layer.design.phi1)), scale);
        cb.layers.push_back(std::move(layer));
    }
    rebuild_codewords(cb);
    return cb;
}

HierarchicalCodebook build_codebook(Scheme scheme, std::size_t n_antennas, std::size_t m_rf,
                                    const GdpConfig &cfg, std::size_t grid_size, std::size_t workers)
{
    if (scheme == Scheme::PsDft)
        return build_ps_dft(n_antennas, m_rf, grid_size, cfg);
    return build_bmw_ms(n_antennas, m_rf, scheme, cfg, grid_size, workers);
}

} // namespace mmwcb
