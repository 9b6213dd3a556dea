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

#include "mmwcb/experiments.hpp"
#include "mmwcb/codebook_io.hpp"
#include "mmwcb/error.hpp"
#include "mmwcb/monte_carlo.hpp"
#include "mmwcb/units.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace mmwcb
{

namespace
{

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

std::string lower(std::string s)
{
    for (auto &c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

[[noreturn]] void bad(const std::string &key, const std::string &value, const std::string &why)
{
    throw ValidationError("config key '" + key + "' = '" + value + "': " + why);
}

std::uint64_t parse_u64(const std::string &key, const std::string &v)
{
    std::uint64_t x = 0;
    const auto *end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, x);
    if (v.empty() || r.ec != std::errc() || r.ptr != end)
        bad(key, v, "expected a non-negative integer");
    return x;
}

std::size_t parse_size(const std::string &key, const std::string &v)
{
    return static_cast<std::size_t>(parse_u64(key, v));
}

double parse_real(const std::string &key, const std::string &v)
{
    double x = 0.0;
    const auto *end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, x);
    if (v.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(x))
        bad(key, v, "expected a finite number");
    return x;
}

bool parse_flag(const std::string &key, const std::string &v)
{
    const std::string l = lower(v);
    if (l == "1" || l == "true" || l == "on" || l == "yes")
        return true;
    if (l == "0" || l == "false" || l == "off" || l == "no")
        return false;
    bad(key, v, "expected true/false");
}

// "a,b,c" or "lo:step:hi" (inclusive).
std::vector<double> parse_real_list(const std::string &key, const std::string &v)
{
    std::vector<double> out;
    if (v.find(':') != std::string::npos)
    {
        const auto parts = split(v, ':');
        if (parts.size() != 3)
            bad(key, v, "ranges are written lo:step:hi");
        const double lo = parse_real(key, parts[0]);
        const double step = parse_real(key, parts[1]);
        const double hi = parse_real(key, parts[2]);
        if (!(step > 0.0) || hi < lo)
            bad(key, v, "range needs step > 0 and hi >= lo");
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
        if (n > 100000)
            bad(key, v, "range too long");
        for (std::size_t i = 0; i <= n; ++i)
            out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    for (const auto &p : split(v, ','))
        out.push_back(parse_real(key, p));
    if (out.empty())
        bad(key, v, "empty list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string &key, const std::string &v)
{
    std::vector<std::size_t> out;
    for (const auto &p : split(v, ','))
        out.push_back(parse_size(key, p));
    if (out.empty())
        bad(key, v, "empty list");
    return out;
}

std::optional<Scheme> scheme_from_token(const std::string &tok)
{
    if (auto s = parse_scheme(tok))
        return s;
    const std::string l = lower(tok);
    if (l == "cf" || l == "bmw-ms/cf")
        return Scheme::BmwMsCf;
    if (l == "lcs" || l == "bmw-ms/lcs")
        return Scheme::BmwMsLcs;
    if (l == "psdft" || l == "ps-dft" || l == "dft")
        return Scheme::PsDft;
    return std::nullopt;
}

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string fixed(double x, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T> &v, F fmt)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            s += ',';
        s += fmt(v[i]);
    }
    return s;
}

std::string scheme_token(Scheme s)
{
    switch (s)
    {
    case Scheme::BmwMsCf:
        return "cf";
    case Scheme::BmwMsLcs:
        return "lcs";
    case Scheme::PsDft:
        return "ps-dft";
    }
    return "?";
}

std::string norm_token(PatternNorm n)
{
    switch (n)
    {
    case PatternNorm::Unit:
        return "unit";
    case PatternNorm::Papc:
        return "papc";
    case PatternNorm::Both:
        return "both";
    }
    return "?";
}

struct KeyDef
{
    std::string name;
    std::function<void(ExperimentConfig &, const std::string &)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

const std::vector<KeyDef> &key_table()
{
    static const std::vector<KeyDef> table = {
        {"n_antennas", [](ExperimentConfig &c, const std::string &v) { c.n_antennas = parse_size_list("n_antennas", v); },
         [](const ExperimentConfig &c) { return join(c.n_antennas, [](std::size_t x) { return std::to_string(x); }); }},
        {"m_rf", [](ExperimentConfig &c, const std::string &v) { c.m_rf = parse_size("m_rf", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.m_rf); }},
        {"schemes",
         [](ExperimentConfig &c, const std::string &v) {
             std::vector<Scheme> out;
             for (const auto &t : split(v, ','))
             {
                 const auto s = scheme_from_token(t);
                 if (!s)
                     bad("schemes", v, "unknown scheme '" + t + "' (cf, lcs, ps-dft)");
                 out.push_back(*s);
             }
             if (out.empty())
                 bad("schemes", v, "empty list");
             c.schemes = out;
         },
         [](const ExperimentConfig &c) { return join(c.schemes, scheme_token); }},
        {"grid_size", [](ExperimentConfig &c, const std::string &v) { c.grid_size = parse_size("grid_size", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.grid_size); }},
        {"gamma_per_db", [](ExperimentConfig &c, const std::string &v) { c.gamma_per_db = parse_real_list("gamma_per_db", v); },
         [](const ExperimentConfig &c) { return join(c.gamma_per_db, num); }},
        {"integration_points",
         [](ExperimentConfig &c, const std::string &v) {
             if (lower(v) == "auto")
                 c.integration_points.reset();
             else
                 c.integration_points = parse_size("integration_points", v);
         },
         [](const ExperimentConfig &c) {
             return c.integration_points ? std::to_string(*c.integration_points) : std::string("auto");
         }},
        {"snr_db", [](ExperimentConfig &c, const std::string &v) { c.snr_db = parse_real_list("snr_db", v); },
         [](const ExperimentConfig &c) { return join(c.snr_db, num); }},
        {"trials", [](ExperimentConfig &c, const std::string &v) { c.trials = parse_size("trials", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.trials); }},
        {"seed", [](ExperimentConfig &c, const std::string &v) { c.seed = parse_u64("seed", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.seed); }},
        {"papc", [](ExperimentConfig &c, const std::string &v) { c.papc = parse_flag("papc", v); },
         [](const ExperimentConfig &c) { return std::string(c.papc ? "true" : "false"); }},
        {"p_per", [](ExperimentConfig &c, const std::string &v) { c.p_per = parse_real("p_per", v); },
         [](const ExperimentConfig &c) { return num(c.p_per); }},
        {"p_total", [](ExperimentConfig &c, const std::string &v) { c.p_total = parse_real("p_total", v); },
         [](const ExperimentConfig &c) { return num(c.p_total); }},
        {"l_s", [](ExperimentConfig &c, const std::string &v) { c.l_s = parse_size("l_s", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.l_s); }},
        {"l_paths", [](ExperimentConfig &c, const std::string &v) { c.l_paths = parse_size("l_paths", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.l_paths); }},
        {"workers", [](ExperimentConfig &c, const std::string &v) { c.workers = parse_size("workers", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.workers); }},
        {"codebook", [](ExperimentConfig &c, const std::string &v) { c.codebook = v; },
         [](const ExperimentConfig &c) { return c.codebook; }},
        {"layer", [](ExperimentConfig &c, const std::string &v) { c.layer = parse_size("layer", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.layer); }},
        {"codeword", [](ExperimentConfig &c, const std::string &v) { c.codeword = parse_size("codeword", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.codeword); }},
        {"points", [](ExperimentConfig &c, const std::string &v) { c.points = parse_size("points", v); },
         [](const ExperimentConfig &c) { return std::to_string(c.points); }},
        {"normalization",
         [](ExperimentConfig &c, const std::string &v) {
             const std::string l = lower(v);
             if (l == "unit")
                 c.normalization = PatternNorm::Unit;
             else if (l == "papc")
                 c.normalization = PatternNorm::Papc;
             else if (l == "both")
                 c.normalization = PatternNorm::Both;
             else
                 bad("normalization", v, "expected unit, papc or both");
         },
         [](const ExperimentConfig &c) { return norm_token(c.normalization); }},
        {"pa_saturation_dbm", [](ExperimentConfig &c, const std::string &v) { c.link.pa_saturation_dbm = parse_real("pa_saturation_dbm", v); },
         [](const ExperimentConfig &c) { return num(c.link.pa_saturation_dbm); }},
        {"wavelength_m", [](ExperimentConfig &c, const std::string &v) { c.link.carrier_wavelength_m = parse_real("wavelength_m", v); },
         [](const ExperimentConfig &c) { return num(c.link.carrier_wavelength_m); }},
        {"distance_m", [](ExperimentConfig &c, const std::string &v) { c.link.distance_m = parse_real("distance_m", v); },
         [](const ExperimentConfig &c) { return num(c.link.distance_m); }},
        {"bandwidth_hz", [](ExperimentConfig &c, const std::string &v) { c.link.bandwidth_hz = parse_real("bandwidth_hz", v); },
         [](const ExperimentConfig &c) { return num(c.link.bandwidth_hz); }},
        {"temperature_k", [](ExperimentConfig &c, const std::string &v) { c.link.ambient_temp_k = parse_real("temperature_k", v); },
         [](const ExperimentConfig &c) { return num(c.link.ambient_temp_k); }},
        {"excess_loss_max_db", [](ExperimentConfig &c, const std::string &v) { c.excess_loss_max_db = parse_real("excess_loss_max_db", v); },
         [](const ExperimentConfig &c) { return num(c.excess_loss_max_db); }},
        {"out", [](ExperimentConfig &c, const std::string &v) { c.out = v; },
         [](const ExperimentConfig &c) { return c.out; }},
    };
    return table;
}

std::size_t single_n(const ExperimentConfig &cfg)
{
    if (cfg.n_antennas.size() != 1)
        throw ValidationError("this command takes exactly one n_antennas value");
    return cfg.n_antennas.front();
}

double single_gamma(const ExperimentConfig &cfg)
{
    if (cfg.gamma_per_db.size() != 1)
        throw ValidationError("this command takes exactly one gamma_per_db value");
    return cfg.gamma_per_db.front();
}

HierarchicalCodebook build_for(const ExperimentConfig &cfg, Scheme s, std::size_t n, double gamma_db)
{
    return build_codebook(s, n, cfg.m_rf, cfg.gdp_config(gamma_db), cfg.grid_size, cfg.workers);
}

// CSV body plus the trailing provenance comment.
std::string finish_csv(const std::string &command, const ExperimentConfig &cfg, std::string body)
{
    body += "# mmwcb " + std::string(kVersion) + " command=" + command + " " + cfg.provenance() + "\n";
    return body;
}

std::string emit(const ExperimentConfig &cfg, std::string text)
{
    if (!cfg.out.empty())
        write_text(cfg.out, text);
    return text;
}

std::string gain_db(double g2)
{
    // Exact nulls would print -inf; clamp to a floor well below any sidelobe of interest.
    return fixed(std::max(linear_to_db(std::max(g2, 1e-30)), -300.0), 6);
}

} // namespace

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto &d : key_table())
            k.push_back(d.name);
        return k;
    }();
    return keys;
}

void ExperimentConfig::set(const std::string &key, const std::string &value)
{
    for (const auto &d : key_table())
        if (d.name == key)
        {
            d.set(*this, trim(value));
            return;
        }
    throw ValidationError("unknown config key '" + key + "'");
}

void ExperimentConfig::validate() const
{
    for (std::size_t n : n_antennas)
        if (n < 2 || n > 4096)
            throw ValidationError("n_antennas must lie in [2, 4096]");
    if (m_rf < 2 || m_rf > 64)
        throw ValidationError("m_rf must lie in [2, 64]");
    for (std::size_t n : n_antennas)
        if (!log_base(n, m_rf))
            throw ValidationError("n_antennas = " + std::to_string(n) + " is not a power of m_rf = " +
                                  std::to_string(m_rf));
    if (grid_size < 8 || grid_size > 4096)
        throw ValidationError("grid_size must lie in [8, 4096]");
    for (double g : gamma_per_db)
        if (g < -60.0 || g > 60.0)
            throw ValidationError("gamma_per_db must lie in [-60, 60]");
    if (integration_points && *integration_points < 256)
        throw ValidationError("integration_points must be at least 256");
    for (double s : snr_db)
        if (s < -200.0 || s > 200.0)
            throw ValidationError("snr_db must lie in [-200, 200]");
    if (trials < 1)
        throw ValidationError("trials must be at least 1");
    if (!(p_per > 0.0) || !(p_total > 0.0))
        throw ValidationError("p_per and p_total must be positive");
    if (l_s < m_rf)
        throw ValidationError("l_s must be at least m_rf");
    if (l_paths < 1)
        throw ValidationError("l_paths must be at least 1");
    if (workers < 1 || workers > 1024)
        throw ValidationError("workers must lie in [1, 1024]");
    if (points < 2)
        throw ValidationError("points must be at least 2");
    if (excess_loss_max_db < 0.0)
        throw ValidationError("excess_loss_max_db must be non-negative");
    try
    {
        link.validate();
    }
    catch (const Error &e)
    {
        throw ValidationError(e.what());
    }
}

std::string ExperimentConfig::provenance() const
{
    std::string s;
    for (const auto &d : key_table())
    {
        if (d.name == "workers" || d.name == "out")
            continue;
        if (!s.empty())
            s += ' ';
        s += d.name + "=" + d.get(*this);
    }
    return s;
}

GdpConfig ExperimentConfig::gdp_config(double gamma_db) const
{
    GdpConfig g;
    g.gamma_per = db_to_linear(gamma_db);
    g.integration_points = integration_points;
    return g;
}

ExperimentConfig default_config(const std::string &command)
{
    ExperimentConfig c;
    if (command == "gdp")
    {
        c.n_antennas = {16, 32, 64};
        c.gamma_per_db = {0.0, 2.0};
    }
    return c;
}

void apply_config_file(ExperimentConfig &cfg, const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config '" + path.string() + "'");
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line))
    {
        ++no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path.string() + ":" + std::to_string(no) + ": expected key = value");
        try
        {
            cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
        }
        catch (const ValidationError &e)
        {
            throw ValidationError(path.string() + ":" + std::to_string(no) + ": " + e.what());
        }
    }
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

std::string cmd_design(const ExperimentConfig &cfg, std::string *log)
{
    cfg.validate();
    if (cfg.schemes.size() != 1)
        throw ValidationError("design takes exactly one scheme");
    if (cfg.out.empty())
        throw ValidationError("design needs an output path (out)");
    const std::size_t n = single_n(cfg);
    const double gamma_db = single_gamma(cfg);
    const auto cb = build_for(cfg, cfg.schemes.front(), n, gamma_db);
    save_codebook(cb, cfg.out);

    const GdpConfig g = cfg.gdp_config(gamma_db);
    std::string s = "layer,m_s,n_s,rf_chains,delta_theta,gdp_codeword1\n";
    for (const auto &layer : cb.layers)
    {
        const auto &cw = layer.codewords.front();
        s += std::to_string(layer.k) + "," + std::to_string(layer.design.m_s) + "," +
             std::to_string(layer.design.n_s) + "," + std::to_string(layer.design.rf_chains) + "," +
             num(layer.design.delta_theta) + "," + num(gdp(cw.unit_awv, cw.coverage, g)) + "\n";
    }
    if (log)
        *log += "wrote " + std::string(scheme_name(cb.scheme)) + " codebook, N=" + std::to_string(n) + ", " +
                std::to_string(cb.layers.size()) + " layers, to " + cfg.out + "\n";
    return s;
}

std::string cmd_beampattern(const ExperimentConfig &cfg)
{
    cfg.validate();
    if (cfg.codebook.empty())
        throw ValidationError("beampattern needs an input codebook (codebook)");
    const auto cb = load_codebook(cfg.codebook);
    if (cfg.layer > cb.depth())
        throw ValidationError("layer " + std::to_string(cfg.layer) + " exceeds codebook depth " +
                              std::to_string(cb.depth()));
    const auto &layer = cb.layers[cfg.layer];
    if (cfg.codeword > layer.codewords.size())
        throw ValidationError("codeword index exceeds the layer size");

    std::vector<const Codeword *> picked;
    for (const auto &cw : layer.codewords)
        if (cfg.codeword == 0 || cw.index == cfg.codeword)
            picked.push_back(&cw);

    std::vector<double> grid(cfg.points);
    for (std::size_t i = 0; i < cfg.points; ++i)
        grid[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(cfg.points);

    std::string s = "angle,codeword_id,normalization,gain_db\n";
    for (const Codeword *cw : picked)
    {
        const std::string id = std::to_string(cw->layer) + ":" + std::to_string(cw->index);
        const auto pattern = beam_pattern(cw->unit_awv, grid);
        const double papc_offset = 1.0 / inf_norm_sq(cw->unit_awv);
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            if (cfg.normalization != PatternNorm::Papc)
                s += fixed(grid[i], 9) + "," + id + ",unit," + gain_db(pattern[i]) + "\n";
            if (cfg.normalization != PatternNorm::Unit)
                s += fixed(grid[i], 9) + "," + id + ",papc," + gain_db(pattern[i] * papc_offset) + "\n";
        }
    }
    return emit(cfg, finish_csv("beampattern", cfg, std::move(s)));
}

std::string cmd_gdp(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::string s = "n_antennas,scheme,gamma_per_db,gdp_layer1\n";
    for (std::size_t n : cfg.n_antennas)
        for (double gamma_db : cfg.gamma_per_db)
            for (Scheme sc : cfg.schemes)
            {
                const auto cb = build_for(cfg, sc, n, gamma_db);
                if (cb.depth() < 1)
                    throw ValidationError("codebook has no layer 1");
                const auto &cw = cb.codeword(1, 1);
                const double v = gdp(cw.unit_awv, cw.coverage, cfg.gdp_config(gamma_db));
                s += std::to_string(n) + "," + std::string(scheme_name(sc)) + "," + num(gamma_db) + "," +
                     fixed(v, 10) + "\n";
            }
    return emit(cfg, finish_csv("gdp", cfg, std::move(s)));
}

std::string cmd_cdf(const ExperimentConfig &cfg)
{
    cfg.validate();
    const std::size_t n = single_n(cfg);
    const double gamma_db = single_gamma(cfg);
    std::string s = "scheme,power,cdf\n";
    for (Scheme sc : cfg.schemes)
    {
        const auto cb = build_for(cfg, sc, n, gamma_db);
        for (const auto &[p, f] : element_power_cdf({&cb}))
            s += std::string(scheme_name(sc)) + "," + fixed(p, 12) + "," + fixed(f, 9) + "\n";
    }
    return emit(cfg, finish_csv("cdf", cfg, std::move(s)));
}

std::string cmd_simulate(const ExperimentConfig &cfg)
{
    cfg.validate();
    const std::size_t n = single_n(cfg);
    const double gamma_db = single_gamma(cfg);
    std::vector<HierarchicalCodebook> books;
    books.reserve(cfg.schemes.size());
    for (Scheme sc : cfg.schemes)
        books.push_back(build_for(cfg, sc, n, gamma_db));
    std::vector<SchemeEntry> entries;
    for (const auto &b : books)
        entries.push_back({std::string(scheme_name(b.scheme)), &b, &b});

    SimConfig sim;
    sim.l_paths = cfg.l_paths;
    sim.l_s = cfg.l_s;
    sim.papc = cfg.papc;
    sim.p_per = cfg.p_per;
    sim.p_total = cfg.p_total;
    sim.seed = cfg.seed;
    sim.trials = cfg.trials;
    sim.workers = cfg.workers;
    const auto rows = run_monte_carlo(entries, cfg.snr_db, sim);

    std::string s = "snr_db,scheme,success_rate,rate_bps_hz,trials,stderr\n";
    for (const auto &r : rows)
        s += num(r.snr_db) + "," + r.scheme + "," + fixed(r.success_rate, 6) + "," + fixed(r.rate_bps_hz, 6) + "," +
             std::to_string(r.trials) + "," + fixed(r.stderr_success, 6) + "\n";
    return emit(cfg, finish_csv("simulate", cfg, std::move(s)));
}

std::string cmd_linkbudget(const ExperimentConfig &cfg)
{
    cfg.validate();
    LinkBudget lb = cfg.link;
    lb.training_length = static_cast<double>(cfg.l_s);
    lb.excess_loss_db = 0.0;
    const auto lo_loss = link_budget_report(lb);
    lb.excess_loss_db = cfg.excess_loss_max_db;
    const auto hi_loss = link_budget_report(lb);
    const auto &r = lo_loss;

    std::string s;
    s += "pa_saturation_dbm," + fixed(lb.pa_saturation_dbm, 2) + "\n";
    s += "free_space_loss_db," + fixed(r.free_space_loss_db, 2) + "\n";
    s += "received_dbm," + fixed(r.received_dbm, 2) + "\n";
    s += "noise_dbm," + fixed(r.noise_dbm, 2) + "\n";
    s += "per_antenna_snr_db," + fixed(r.per_antenna_snr_db, 2) + "\n";
    s += "spreading_gain_db," + fixed(r.spreading_gain_db, 2) + "\n";
    s += "gamma_per_db_max," + fixed(lo_loss.gamma_per_db, 2) + "\n";
    s += "gamma_per_db_min," + fixed(hi_loss.gamma_per_db, 2) + "\n";
    s += "# chain: " + fixed(lb.pa_saturation_dbm, 2) + " dBm - 20log10(4 pi d / lambda) = " + fixed(r.received_dbm, 2) +
         " dBm; kTB = 10log10(k*" + num(lb.ambient_temp_k) + "*" + num(lb.bandwidth_hz) + "*1e3) = " +
         fixed(r.noise_dbm, 2) + " dBm; SNR_per = " + fixed(r.per_antenna_snr_db, 2) + " dB; +10log10(" +
         std::to_string(cfg.l_s) + ") = " + fixed(r.spreading_gain_db, 2) + " dB; gamma_per in [" +
         fixed(hi_loss.gamma_per_db, 2) + ", " + fixed(lo_loss.gamma_per_db, 2) + "] dB over 0-" +
         num(cfg.excess_loss_max_db) + " dB excess loss\n";

    // The widely quoted worked example for these defaults states a -74 dBm noise floor and then
    // subtracts -76 dBm; neither follows from kTB at 100 MHz / 300 K.
    const double quoted_noise = -74.0;
    const double implied_bw = std::pow(10.0, (quoted_noise - r.noise_dbm) / 10.0) * lb.bandwidth_hz;
    s += "# note: the commonly quoted worked example for these defaults gives noise -74 dBm, per-antenna SNR "
         "(-76)-(-87) = -11 dB and gamma_per in [-5, 10] dB. kTB evaluates to " +
         fixed(r.noise_dbm, 2) + " dBm here; -74 dBm corresponds to a bandwidth of " + num(implied_bw / 1e9) +
         " GHz (a 20 dB slip), and the -76 dBm used in the subtraction differs from the stated -74 dBm. "
         "Values above follow the formula.\n";
    return emit(cfg, finish_csv("linkbudget", cfg, std::move(s)));
}

std::string run_command(const std::string &command, const ExperimentConfig &cfg, std::string *log)
{
    if (command == "design")
        return cmd_design(cfg, log);
    if (command == "beampattern")
        return cmd_beampattern(cfg);
    if (command == "gdp")
        return cmd_gdp(cfg);
    if (command == "cdf")
        return cmd_cdf(cfg);
    if (command == "simulate")
        return cmd_simulate(cfg);
    if (command == "linkbudget")
        return cmd_linkbudget(cfg);
    throw ValidationError("unknown command '" + command + "'");
}

int exit_code_for(const std::exception &e)
{
    if (dynamic_cast<const InfeasibleGeometry *>(&e))
        return 3;
    if (dynamic_cast<const IoError *>(&e))
        return 4;
    if (dynamic_cast<const Error *>(&e))
        return 2;
    return 1;
}

} // namespace mmwcb
