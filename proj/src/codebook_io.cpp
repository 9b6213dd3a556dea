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

#include "mmwcb/codebook_io.hpp"
#include "mmwcb/error.hpp"

#include <cerrno>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace mmwcb
{

namespace
{

std::string fmt_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}

std::string fmt_cplx(cplx z)
{
    return "(" + fmt_real(z.real()) + "," + fmt_real(z.imag()) + ")";
}

} // namespace

std::string serialize(const HierarchicalCodebook &cb)
{
    std::ostringstream os;
    os << kCodebookMagic << ' ' << kCodebookFormatVersion << '\n';
    os << "scheme " << scheme_name(cb.scheme) << '\n';
    os << "n_antennas " << cb.n_antennas << '\n';
    os << "branching " << cb.branching << '\n';
    os << "grid_size " << cb.grid_size << '\n';
    os << "gamma_per " << fmt_real(cb.gamma_per) << '\n';
    os << "layers " << cb.layers.size() << '\n';
    for (const auto &layer : cb.layers)
    {
        const auto &d = layer.design;
        os << "layer " << layer.k << '\n';
        os << "design m_s " << d.m_s << " n_s " << d.n_s << " rf_chains " << d.rf_chains
           << " delta_theta " << fmt_real(d.delta_theta) << " phi1 " << fmt_real(d.phi1)
           << " phi2 " << fmt_real(d.phi2) << '\n';
        os << "composites " << layer.composites.size() << '\n';
        for (const auto &comp : layer.composites)
        {
            os << "composite " << comp.index << '\n';
            os << "digital_scale " << fmt_real(comp.digital_scale) << '\n';
            os << "columns " << comp.analog->cols() << '\n';
            for (std::size_t c = 0; c < comp.analog->cols(); ++c)
            {
                os << "column " << (c + 1);
                for (std::size_t r = 0; r < comp.analog->rows(); ++r)
                    os << ' ' << fmt_cplx((*comp.analog)(r, c));
                os << '\n';
            }
            os << "members " << comp.members() << '\n';
            for (std::size_t j = 0; j < comp.members(); ++j)
                os << "member " << (j + 1) << " rotation " << fmt_real(comp.rotations[j]) << " coverage "
                   << fmt_real(comp.coverages[j].start()) << ' ' << fmt_real(comp.coverages[j].width()) << '\n';
            os << "end composite\n";
        }
        os << "end layer\n";
    }
    os << "end codebook\n";
    return os.str();
}

namespace
{

class Reader
{
public:
    explicit Reader(std::string_view text)
    {
        std::size_t pos = 0;
        while (pos < text.size())
        {
            std::size_t nl = text.find('\n', pos);
            if (nl == std::string_view::npos)
                nl = text.size();
            std::string_view line = text.substr(pos, nl - pos);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            lines_.push_back(line);
            pos = nl + 1;
        }
    }

    // Next non-blank line split on spaces; advances the cursor.
    std::vector<std::string_view> next(const std::string &expected_field)
    {
        while (cursor_ < lines_.size() && lines_[cursor_].find_first_not_of(' ') == std::string_view::npos)
            ++cursor_;
        if (cursor_ >= lines_.size())
            throw ParseError(lines_.size() + 1, expected_field, "unexpected end of document");
        line_no_ = ++cursor_;
        std::vector<std::string_view> tokens;
        std::string_view line = lines_[cursor_ - 1];
        std::size_t pos = 0;
        while (pos < line.size())
        {
            const std::size_t start = line.find_first_not_of(' ', pos);
            if (start == std::string_view::npos)
                break;
            std::size_t stop = line.find(' ', start);
            if (stop == std::string_view::npos)
                stop = line.size();
            tokens.push_back(line.substr(start, stop - start));
            pos = stop;
        }
        if (tokens.empty() || tokens[0] != expected_field)
            fail(expected_field, "expected '" + expected_field + "'");
        return tokens;
    }

    [[noreturn]] void fail(const std::string &field, const std::string &reason) const
    {
        throw ParseError(line_no_, field, reason);
    }

    std::size_t line() const noexcept { return line_no_; }

    void expect_tokens(const std::vector<std::string_view> &t, std::size_t n, const std::string &field) const
    {
        if (t.size() != n)
            fail(field, "expected " + std::to_string(n - 1) + " value(s), found " + std::to_string(t.size() - 1));
    }

    std::size_t to_count(std::string_view tok, const std::string &field) const
    {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
            fail(field, "not a non-negative integer: '" + std::string(tok) + "'");
        return v;
    }

    double to_real(std::string_view tok, const std::string &field) const
    {
        const std::string s(tok);
        char *end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
            fail(field, "not a finite real number: '" + s + "'");
        return v;
    }

    cplx to_cplx(std::string_view tok, const std::string &field) const
    {
        if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
            fail(field, "complex value must be written (re,im): '" + std::string(tok) + "'");
        const std::string_view body = tok.substr(1, tok.size() - 2);
        const std::size_t comma = body.find(',');
        if (comma == std::string_view::npos)
            fail(field, "complex value must be written (re,im): '" + std::string(tok) + "'");
        return {to_real(body.substr(0, comma), field), to_real(body.substr(comma + 1), field)};
    }

    void expect_keyword(std::string_view tok, std::string_view keyword, const std::string &field) const
    {
        if (tok != keyword)
            fail(field, "expected keyword '" + std::string(keyword) + "', found '" + std::string(tok) + "'");
    }

    bool at_end() const
    {
        for (std::size_t k = cursor_; k < lines_.size(); ++k)
            if (lines_[k].find_first_not_of(' ') != std::string_view::npos)
                return false;
        return true;
    }

private:
    std::vector<std::string_view> lines_;
    std::size_t cursor_ = 0;
    std::size_t line_no_ = 0;
};

} // namespace

HierarchicalCodebook deserialize(std::string_view text)
{
    Reader in(text);
    HierarchicalCodebook cb;

    auto t = in.next(std::string(kCodebookMagic));
    in.expect_tokens(t, 2, "format");
    if (in.to_count(t[1], "format") != static_cast<std::size_t>(kCodebookFormatVersion))
        in.fail("format", "unsupported format version");

    t = in.next("scheme");
    in.expect_tokens(t, 2, "scheme");
    const auto scheme = parse_scheme(t[1]);
    if (!scheme)
        in.fail("scheme", "unknown scheme tag '" + std::string(t[1]) + "'");
    cb.scheme = *scheme;

    t = in.next("n_antennas");
    in.expect_tokens(t, 2, "n_antennas");
    cb.n_antennas = in.to_count(t[1], "n_antennas");
    if (cb.n_antennas == 0)
        in.fail("n_antennas", "must be positive");

    t = in.next("branching");
    in.expect_tokens(t, 2, "branching");
    cb.branching = in.to_count(t[1], "branching");
    if (cb.branching < 2)
        in.fail("branching", "must be at least 2");

    t = in.next("grid_size");
    in.expect_tokens(t, 2, "grid_size");
    cb.grid_size = in.to_count(t[1], "grid_size");

    t = in.next("gamma_per");
    in.expect_tokens(t, 2, "gamma_per");
    cb.gamma_per = in.to_real(t[1], "gamma_per");

    t = in.next("layers");
    in.expect_tokens(t, 2, "layers");
    const std::size_t n_layers = in.to_count(t[1], "layers");
    const auto depth = log_base(cb.n_antennas, cb.branching);
    if (!depth || n_layers != *depth + 1)
        in.fail("layers", "layer count does not match n_antennas and branching");

    for (std::size_t k = 0; k < n_layers; ++k)
    {
        Layer layer;
        t = in.next("layer");
        in.expect_tokens(t, 2, "layer");
        layer.k = in.to_count(t[1], "layer");
        if (layer.k != k)
            in.fail("layer", "layers must appear in order 0, 1, ...");

        t = in.next("design");
        in.expect_tokens(t, 13, "design");
        in.expect_keyword(t[1], "m_s", "design");
        layer.design.m_s = in.to_count(t[2], "design.m_s");
        in.expect_keyword(t[3], "n_s", "design");
        layer.design.n_s = in.to_count(t[4], "design.n_s");
        in.expect_keyword(t[5], "rf_chains", "design");
        layer.design.rf_chains = in.to_count(t[6], "design.rf_chains");
        in.expect_keyword(t[7], "delta_theta", "design");
        layer.design.delta_theta = in.to_real(t[8], "design.delta_theta");
        in.expect_keyword(t[9], "phi1", "design");
        layer.design.phi1 = in.to_real(t[10], "design.phi1");
        in.expect_keyword(t[11], "phi2", "design");
        layer.design.phi2 = in.to_real(t[12], "design.phi2");

        t = in.next("composites");
        in.expect_tokens(t, 2, "composites");
        const std::size_t n_comp = in.to_count(t[1], "composites");
        const std::size_t per_layer = (k == 0) ? 1 : static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(cb.branching), static_cast<double>(k - 1))));
        if (n_comp != per_layer)
            in.fail("composites", "expected " + std::to_string(per_layer) + " composites in layer " + std::to_string(k));

        std::shared_ptr<const AnalogMatrix> previous;
        for (std::size_t c = 1; c <= n_comp; ++c)
        {
            CompositeCodeword comp;
            comp.layer = k;
            t = in.next("composite");
            in.expect_tokens(t, 2, "composite");
            comp.index = in.to_count(t[1], "composite");
            if (comp.index != c)
                in.fail("composite", "composites must be numbered 1, 2, ... in order");

            t = in.next("digital_scale");
            in.expect_tokens(t, 2, "digital_scale");
            comp.digital_scale = in.to_real(t[1], "digital_scale");

            t = in.next("columns");
            in.expect_tokens(t, 2, "columns");
            const std::size_t n_cols = in.to_count(t[1], "columns");
            if (n_cols == 0)
                in.fail("columns", "must be positive");
            AnalogMatrix analog(cb.n_antennas, n_cols);
            for (std::size_t col = 0; col < n_cols; ++col)
            {
                t = in.next("column");
                in.expect_tokens(t, cb.n_antennas + 2, "column");
                if (in.to_count(t[1], "column") != col + 1)
                    in.fail("column", "columns must be numbered 1, 2, ... in order");
                const double amp = 1.0 / std::sqrt(static_cast<double>(cb.n_antennas));
                for (std::size_t r = 0; r < cb.n_antennas; ++r)
                {
                    analog(r, col) = in.to_cplx(t[r + 2], "column");
                    if (std::abs(std::abs(analog(r, col)) - amp) > 1e-9)
                        in.fail("column", "analog entries must have modulus 1/sqrt(n_antennas)");
                }
            }
            if (previous && *previous == analog)
                comp.analog = previous;
            else
                comp.analog = std::make_shared<const AnalogMatrix>(std::move(analog));
            previous = comp.analog;

            t = in.next("members");
            in.expect_tokens(t, 2, "members");
            const std::size_t n_mem = in.to_count(t[1], "members");
            if (n_mem != (k == 0 ? 1 : cb.branching))
                in.fail("members", "wrong member count for layer " + std::to_string(k));
            for (std::size_t j = 1; j <= n_mem; ++j)
            {
                t = in.next("member");
                in.expect_tokens(t, 7, "member");
                if (in.to_count(t[1], "member") != j)
                    in.fail("member", "members must be numbered 1, 2, ... in order");
                in.expect_keyword(t[2], "rotation", "member");
                comp.rotations.push_back(in.to_real(t[3], "member.rotation"));
                in.expect_keyword(t[4], "coverage", "member");
                const double start = in.to_real(t[5], "member.coverage");
                const double width = in.to_real(t[6], "member.coverage");
                try
                {
                    comp.coverages.emplace_back(start, width);
                }
                catch (const InvalidInterval &e)
                {
                    in.fail("member.coverage", e.what());
                }
            }
            t = in.next("end");
            in.expect_tokens(t, 2, "end");
            in.expect_keyword(t[1], "composite", "end");
            layer.composites.push_back(std::move(comp));
        }
        t = in.next("end");
        in.expect_tokens(t, 2, "end");
        in.expect_keyword(t[1], "layer", "end");
        cb.layers.push_back(std::move(layer));
    }
    t = in.next("end");
    in.expect_tokens(t, 2, "end");
    in.expect_keyword(t[1], "codebook", "end");
    if (!in.at_end())
        throw ParseError(in.line() + 1, "end", "trailing content after 'end codebook'");

    try
    {
        rebuild_codewords(cb);
    }
    catch (const Error &e)
    {
        throw ParseError(in.line(), "column", std::string("codebook entries are degenerate: ") + e.what());
    }
    return cb;
}

bool equivalent(const HierarchicalCodebook &a, const HierarchicalCodebook &b)
{
    if (a.scheme != b.scheme || a.n_antennas != b.n_antennas || a.branching != b.branching ||
        a.grid_size != b.grid_size || a.gamma_per != b.gamma_per || a.layers.size() != b.layers.size())
        return false;
    for (std::size_t k = 0; k < a.layers.size(); ++k)
    {
        const Layer &la = a.layers[k];
        const Layer &lb = b.layers[k];
        const auto &da = la.design;
        const auto &db = lb.design;
        if (la.k != lb.k || da.m_s != db.m_s || da.n_s != db.n_s || da.rf_chains != db.rf_chains ||
            da.delta_theta != db.delta_theta || da.phi1 != db.phi1 || da.phi2 != db.phi2)
            return false;
        if (la.composites.size() != lb.composites.size() || la.codewords.size() != lb.codewords.size())
            return false;
        for (std::size_t c = 0; c < la.composites.size(); ++c)
        {
            const auto &ca = la.composites[c];
            const auto &cb2 = lb.composites[c];
            if (ca.layer != cb2.layer || ca.index != cb2.index || ca.digital_scale != cb2.digital_scale ||
                ca.rotations != cb2.rotations || ca.coverages != cb2.coverages || !(*ca.analog == *cb2.analog))
                return false;
        }
        for (std::size_t n = 0; n < la.codewords.size(); ++n)
        {
            const auto &wa = la.codewords[n];
            const auto &wb = lb.codewords[n];
            if (wa.index != wb.index || wa.composite != wb.composite || wa.member != wb.member ||
                !(wa.awv == wb.awv) || !(wa.coverage == wb.coverage))
                return false;
        }
    }
    return true;
}

void save_codebook(const HierarchicalCodebook &cb, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << serialize(cb);
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

HierarchicalCodebook load_codebook(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open codebook '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

} // namespace mmwcb
