// SPDX-License-Identifier: MIT
//
// Data-driven bandwidth selection. For every pair k > m of candidate cutoffs
// the comparison correction
//   H2(m,k) = n^{-1} [ cPen c1 lambda^2 + 16 ((5/2) kappa)^2 log n ] max(sigma2, x^2)
// is built from weighted integrals of |Ff(-u)/phiCheck(u)| against the kernel
// difference Delta_{m,k}FK, and the cutoff is chosen as
//   mHat = argmin_m [ sup_{k>m} { |thetaHat_k - thetaHat_m|^2 - H2(m,k) } + pen(m) ]
// with pen(m) = H2(0,m). The deterministic variant replaces the truncated
// empirical characteristic function by the analytic one; the oracle cutoff
// m* minimizes the deterministic criterion built from the targets theta_m.

#ifndef LEVYEST_ADAPTIVE_HPP
#define LEVYEST_ADAPTIVE_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "levyest/ecf.hpp"
#include "levyest/estimator.hpp"
#include "levyest/functionals.hpp"
#include "levyest/models.hpp"

namespace levyest {

// Calibration constants of the penalty machinery. The coupled fields obey
//   cPen  = max(64, 16 (2 c1 + gamma)),   kappa = 2 (sqrt(4 c1) + gamma),
// which `with_defaults` enforces by construction and `validate` checks.
struct PenaltyConfig {
    double c1 = 1.0;     // Talagrand constant stand-in
    double gamma = 0.1;
    double delta = 0.25; // weight exponent
    double eta = 0.5;    // exponential-moment parameter of the model
    double kappa = 4.2;
    double cPen = 64.0;
    double cbar1 = 0.0;  // upper bound for the model's C1 (may be +infinity)
    double cbar2 = 0.0;  // upper bound for the model's C2
    bool positivePart = false; // clip the comparison sup at 0 (off: literal)

    static PenaltyConfig with_defaults(double c1 = 1.0, double gamma = 0.1,
                                       double delta = 0.25);
    // Defaults plus model-derived eta and variance-constant bounds.
    static PenaltyConfig for_model(const LevyModel& model, double universalC = 1.0);

    TruncationConfig truncation(InverseVariant variant = InverseVariant::LogTruncated) const;
    void validate() const;
};

enum class PenaltyVariant { Stochastic, Deterministic };

// |Ff(-u)/phiCheck(u)| and w(u)^{-1} sampled on the master grid: the common
// integrand factors shared by every (m,k) pair. The stochastic field uses the
// log-truncated empirical characteristic function, the deterministic one the
// analytic phi.
struct PenaltyField {
    FrequencyGrid grid;
    std::vector<double> ratio; // |Ff(-u) / phiCheck(u)| at grid.node(j)
    std::vector<double> invW;  // w(u)^{-1} at grid.node(j)
    std::size_t n = 0;
    PenaltyVariant variant = PenaltyVariant::Stochastic;
};

PenaltyField penalty_field(const GridEcf& gridEcf, const Functional& f,
                           const PenaltyConfig& cfg);
PenaltyField penalty_field_deterministic(const LevyModel& model, const Functional& f,
                                         const FrequencyGrid& grid, std::size_t n,
                                         const PenaltyConfig& cfg);

// sigma2 = (1/2pi^2) min{ cbar1 int (ratio |DFK| / w)^2, cbar2 (int ratio |DFK| / w)^2 }
// x      = (1/(2 pi sqrt(n))) int ratio |DFK| / w
// where DFK = Delta_{m,k}FK, integrated by trapezoid over the band
// [-k pi, k pi] clipped to the field's grid window (a band edge inside the
// window must land on a grid node). Rejects k <= m.
struct SigmaX {
    double sigmaSq = 0.0;
    double x = 0.0;
};

SigmaX sigma_x_tilde(const PenaltyField& field, const Kernel& kernel, int m, int k,
                     const PenaltyConfig& cfg);
// Convenience form building the field from the sample (log-truncated variant).
SigmaX sigma_x_tilde(const SplitSample& sample, const Functional& f, const Kernel& kernel,
                     int m, int k, const PenaltyConfig& cfg, const QuadratureSpec& q);

// lambda = max{ (8/eta) [log clamp(log clamp(n x (k-m)))]^2 log clamp(n x (k-m))
//                       * log clamp(x^2 (k-m)^2),
//               log clamp(sigma2 (k-m)^2) },   clamp(z) = max(z, e).
// Every log factor is >= 1 by the clamp, so lambda >= max(8/eta, 1) > 0.
double lambda_tilde(double x, double sigmaSq, int m, int k, std::size_t n,
                    const PenaltyConfig& cfg);

// H2(m,k) as in the header comment. Rejects k <= m; requires n >= 2.
double correction(const PenaltyField& field, const Kernel& kernel, int m, int k,
                  const PenaltyConfig& cfg);
double correction(const SplitSample& sample, const Functional& f, const Kernel& kernel,
                  int m, int k, const PenaltyConfig& cfg, const QuadratureSpec& q);

// pen(m) = H2(0, m) under the Delta_{0,m}FK convention.
double penalty(const PenaltyField& field, const Kernel& kernel, int m,
               const PenaltyConfig& cfg);

// All pairwise quantities over an ascending candidate grid, plus pen.
struct PairEntry {
    double sigmaSq = 0.0;
    double x = 0.0;
    double lambda = 0.0;
    double corr = 0.0; // H2(m,k)
};

struct PenaltyTable {
    std::vector<int> mGrid; // ascending, nonempty
    std::map<std::pair<int, int>, PairEntry> pairs; // key (m,k), k > m
    std::vector<double> pen; // aligned with mGrid
    PenaltyVariant variant = PenaltyVariant::Stochastic;
    std::size_t n = 0;

    const PairEntry& at(int m, int k) const;
};

PenaltyTable build_penalty_table(const PenaltyField& field, const Kernel& kernel,
                                 const std::vector<int>& mGrid, const PenaltyConfig& cfg);

struct SelectionResult {
    int mHat = 0;
    std::vector<double> criterion; // aligned with the candidate grid
    double thetaHatAdaptive = 0.0;
};

// estimates must be aligned with table.mGrid (same m in the same slot). The
// sup over the empty set (largest m) is 0; ties break toward the smallest m.
SelectionResult select_m_hat(const std::vector<EstimateRecord>& estimates,
                             const PenaltyTable& table, const PenaltyConfig& cfg);

// Oracle cutoff: argmin_m [ sup_{k>=m} |theta_k - theta_m|^2 + pen(m) ] with
// deterministic targets and penalties (requires the analytic phi); n enters
// through the penalty scaling. The deterministic penalty field lives on a
// master grid of spacing pi/J with J = max(8, ceil(q.nodes / (2 max mGrid)))
// and extent (max mGrid) pi; the targets theta_m use q's own band grids.
struct OracleSelection {
    int mStar = 0;
    std::vector<double> criterion;  // aligned with mGrid
    std::vector<double> thetaM;     // deterministic targets theta_m
    std::vector<double> pen;        // deterministic pen(m)
};

OracleSelection oracle_m_star(const LevyModel& model, const Functional& f,
                              const Kernel& kernel, const std::vector<int>& mGrid,
                              const PenaltyConfig& cfg, std::size_t n,
                              const QuadratureSpec& q);

} // namespace levyest

#endif // LEVYEST_ADAPTIVE_HPP
