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

#ifndef MMWCB_CODEBOOK_HPP
#define MMWCB_CODEBOOK_HPP

#include "mmwcb/array_core.hpp"
#include "mmwcb/gdp.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace mmwcb
{

enum class Scheme
{
    BmwMsCf,
    BmwMsLcs,
    PsDft,
};

/// "BMW-MS/CF", "BMW-MS/LCS" or "PS-DFT".
std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view tag);

/// Row-major m_rf x m_s table addressed with 1-based (rf chain i, sub-array m).
class PhaseMatrix
{
public:
    PhaseMatrix(std::size_t m_rf, std::size_t m_s) : m_rf_(m_rf), m_s_(m_s), v_(m_rf * m_s, 0.0) {}

    std::size_t m_rf() const noexcept { return m_rf_; }
    std::size_t m_s() const noexcept { return m_s_; }
    double &operator()(std::size_t i, std::size_t m) { return v_[(i - 1) * m_s_ + (m - 1)]; }
    double operator()(std::size_t i, std::size_t m) const { return v_[(i - 1) * m_s_ + (m - 1)]; }

    friend bool operator==(const PhaseMatrix &, const PhaseMatrix &) = default;

private:
    std::size_t m_rf_;
    std::size_t m_s_;
    std::vector<double> v_;
};

/// Sub-array split of every RF chain for one target interval.
///
/// Each of the m_rf chains is cut into m_s contiguous sub-arrays of n_s antennas. The
/// m_rf * m_s sub-arrays steer at equally spaced angles delta_theta apart, interleaved across
/// chains so that neighbouring angles always belong to different chains.
struct SubArrayPlan
{
    std::size_t n_antennas = 0;
    std::size_t m_rf = 0;
    std::size_t m_s = 0;
    std::size_t n_s = 0;
    double start = 0.0;
    double width = 0.0;
    double delta_theta = 0.0;

    /// omega_{i,m} = start + (i - 1/2) dtheta + (m - 1) m_rf dtheta
    double steering_angle(std::size_t i, std::size_t m) const;

    /// nu_{i,m} = start + i dtheta + (m - 1) m_rf dtheta, midway between adjacent steering angles.
    double middle_angle(std::size_t i, std::size_t m) const;
};

/// m_s is the smallest divisor of N not below ceil(sqrt(B N / (2 m_rf))), which keeps
/// delta_theta <= 2 / n_s. Throws PreconditionError on bad counts or width, and
/// InfeasibleGeometry when no divisor qualifies.
SubArrayPlan subarray_plan(std::size_t n_antennas, std::size_t m_rf, const AngleInterval &interval);

/// Closed-form phases, reduced to [0, 2*pi).
PhaseMatrix cf_phases(const SubArrayPlan &plan);

/// Column-major N x columns matrix of analog (phase-shifter) weights.
class AnalogMatrix
{
public:
    AnalogMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    cplx &operator()(std::size_t r, std::size_t c) { return v_[c * rows_ + r]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return v_[c * rows_ + r]; }
    Weights column(std::size_t c) const;

    /// F * (scale * 1): the sum of all columns times a common digital weight.
    Weights combine(cplx scale) const;

    friend bool operator==(const AnalogMatrix &, const AnalogMatrix &) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> v_;
};

struct AssembledCodeword
{
    AnalogMatrix analog; // column i is the RF weight vector v_i
    Weights awv;         // sum_i v_i
};

/// Block m of v_i is sqrt(n_s / N) exp(j theta_{i,m}) a(n_s, omega_{i,m}).
/// Throws DimensionMismatch when theta does not match the plan.
AssembledCodeword assemble_codeword(const SubArrayPlan &plan, const PhaseMatrix &theta);

struct LcsResult
{
    double phi1 = 0.0; // phase step between sub-arrays of one chain
    double phi2 = 0.0; // phase step between chains
    PhaseMatrix theta{1, 1};
    double objective = 0.0;
};

/// theta_{i,m} = m * phi1 + i * phi2.
PhaseMatrix equal_difference_phases(const SubArrayPlan &plan, double phi1, double phi2);

/// GDP of the unit-normalized codeword built from (phi1, phi2). Reference evaluation path.
double lcs_objective(const SubArrayPlan &plan, const AngleInterval &interval, const GdpConfig &cfg,
                     double phi1, double phi2);

/// Exhaustive search of (phi1, phi2) over {0, 2pi/G, ...}^2 maximizing lcs_objective.
/// Values within 1e-13 of the running best count as ties; the lexicographically smallest
/// (phi1, phi2) wins. `workers` splits the phi1 rows across threads without changing the result.
LcsResult lcs_phases(const SubArrayPlan &plan, const AngleInterval &interval, const GdpConfig &cfg,
                     std::size_t grid_size, std::size_t workers = 1);

/// M_RF codewords measured together. The analog matrix is shared by every member (and by every
/// composite of the same layer); member j radiates (F * scale * 1) o sqrt(N) a(N, rotation_j).
struct CompositeCodeword
{
    std::size_t layer = 0;
    std::size_t index = 1; // 1-based within the layer
    std::shared_ptr<const AnalogMatrix> analog;
    double digital_scale = 1.0;
    std::vector<double> rotations;        // one per member
    std::vector<AngleInterval> coverages; // one per member

    std::size_t members() const noexcept { return rotations.size(); }

    /// AWV of member j (1-based).
    Weights member_awv(std::size_t j) const;
};

struct Codeword
{
    std::size_t layer = 0;
    std::size_t index = 1;     // n, 1-based within the layer
    std::size_t composite = 1; // parent composite, 1-based
    std::size_t member = 1;    // position inside the parent, 1-based
    Weights awv{std::vector<cplx>{cplx(1.0)}};
    Weights unit_awv{std::vector<cplx>{cplx(1.0)}};
    AngleInterval coverage{-1.0, 2.0};
};

/// Per-layer design record kept for reporting and provenance.
struct LayerDesign
{
    std::size_t m_s = 1;
    std::size_t n_s = 1;
    std::size_t rf_chains = 1; // analog columns actually used
    double delta_theta = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

struct Layer
{
    std::size_t k = 0;
    LayerDesign design;
    std::vector<CompositeCodeword> composites;
    std::vector<Codeword> codewords;
};

/// Coverage of codeword n in layer k: [-1 + (2n - 2)/M^k, -1 + 2n/M^k].
AngleInterval layer_coverage(std::size_t branching, std::size_t k, std::size_t n);

class HierarchicalCodebook
{
public:
    Scheme scheme = Scheme::BmwMsCf;
    std::size_t n_antennas = 0;
    std::size_t branching = 0; // M
    std::size_t grid_size = 0;
    double gamma_per = 1.0;
    std::vector<Layer> layers;

    std::size_t depth() const noexcept { return layers.empty() ? 0 : layers.size() - 1; }
    const Codeword &codeword(std::size_t k, std::size_t n) const;
    const CompositeCodeword &composite(std::size_t k, std::size_t i) const;
};

/// Rebuilds the cached codeword list of every layer from its composites.
void rebuild_codewords(HierarchicalCodebook &cb);

/// Number of layers below the root, log_M(N); nullopt when N is not a power of M.
std::optional<std::size_t> log_base(std::size_t n, std::size_t m);

/// BMW-MS codebook for an N-antenna ULA with m_rf RF chains (N must be a power of m_rf).
HierarchicalCodebook build_bmw_ms(std::size_t n_antennas, std::size_t m_rf, Scheme scheme,
                                  const GdpConfig &cfg = {}, std::size_t grid_size = 64,
                                  std::size_t workers = 1);

/// PS-DFT baseline: layer k uses N / M^k virtual RF chains steered 2/N apart with an
/// equal-difference phase chosen by a 1-D grid search on GDP.
HierarchicalCodebook build_ps_dft(std::size_t n_antennas, std::size_t branching,
                                  std::size_t grid_size = 64, const GdpConfig &cfg = {});

HierarchicalCodebook build_codebook(Scheme scheme, std::size_t n_antennas, std::size_t m_rf,
                                    const GdpConfig &cfg = {}, std::size_t grid_size = 64,
                                    std::size_t workers = 1);

} // namespace mmwcb

#endif
