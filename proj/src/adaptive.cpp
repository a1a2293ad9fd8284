// SPDX-License-Identifier: MIT

#include "levyest/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace levyest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_e(double z) { return std::max(z, std::numbers::e); }

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

// Index of the band edge k*pi, clipped to the grid window: integrals of
// Delta_{m,k}FK only see the part of the band the field was evaluated on.
int band_half_index(const FrequencyGrid& grid, int k) {
    const double exact = k * kPi / grid.step;
    if (exact >= grid.half - 1e-9) return grid.half;
    const int idx = static_cast<int>(std::lround(exact));
    if (std::abs(exact - idx) > 1e-9 * std::max(1.0, exact))
        throw std::invalid_argument(
            "penalty band edge k*pi does not fall on a grid node; use step pi/J");
    return idx;
}

} // namespace

PenaltyConfig PenaltyConfig::with_defaults(double c1, double gamma, double delta) {
    require(c1 > 0.0 && gamma > 0.0 && delta > 0.0,
            "PenaltyConfig: c1, gamma, delta must be positive");
    PenaltyConfig cfg;
    cfg.c1 = c1;
    cfg.gamma = gamma;
    cfg.delta = delta;
    cfg.kappa = 2.0 * (std::sqrt(4.0 * c1) + gamma);
    cfg.cPen = std::max(64.0, 16.0 * (2.0 * c1 + gamma));
    return cfg;
}

PenaltyConfig PenaltyConfig::for_model(const LevyModel& model, double universalC) {
    PenaltyConfig cfg = with_defaults();
    cfg.eta = default_eta(model);
    const VarianceConstants vc = variance_constants(model, universalC);
    cfg.cbar1 = vc.c1Finite ? vc.c1 : kInf;
    cfg.cbar2 = vc.c2;
    return cfg;
}

TruncationConfig PenaltyConfig::truncation(InverseVariant variant) const {
    TruncationConfig t;
    t.kappa = kappa;
    t.delta = delta;
    t.gamma = gamma;
    t.variant = variant;
    return t;
}

void PenaltyConfig::validate() const {
    require(c1 > 0.0 && gamma > 0.0 && delta > 0.0 && eta > 0.0,
            "PenaltyConfig: c1, gamma, delta, eta must be positive");
    const double kappaMin = 2.0 * (std::sqrt(4.0 * c1) + gamma);
    require(kappa >= kappaMin * (1.0 - 1e-12),
            "PenaltyConfig: kappa must be >= 2(sqrt(4 c1) + gamma)");
    const double cPenMin = std::max(64.0, 16.0 * (2.0 * c1 + gamma));
    require(cPen >= cPenMin * (1.0 - 1e-12),
            "PenaltyConfig: cPen must be >= max(64, 16(2 c1 + gamma))");
    require(cbar1 >= 0.0 && cbar2 >= 0.0,
            "PenaltyConfig: variance-constant bounds must be nonnegative");
}

PenaltyField penalty_field(const GridEcf& gridEcf, const Functional& f,
                           const PenaltyConfig& cfg) {
    cfg.validate();
    require(gridEcf.n >= 2, "penalty_field: need n >= 2");
    const TruncationConfig trunc = cfg.truncation(InverseVariant::LogTruncated);
    PenaltyField field;
    field.grid = gridEcf.grid;
    field.n = gridEcf.n;
    field.variant = PenaltyVariant::Stochastic;
    field.ratio.resize(gridEcf.grid.point_count());
    field.invW.resize(gridEcf.grid.point_count());
    for (int idx = 0; idx < gridEcf.grid.point_count(); ++idx) {
        const double u = gridEcf.grid.node(idx);
        const Complex phiCheck = log_truncated_value(gridEcf.phi[idx], u, gridEcf.n, trunc);
        field.ratio[idx] = std::abs(functional_fourier(f, -u)) / std::abs(phiCheck);
        field.invW[idx] = 1.0 / weight(u, cfg.delta);
    }
    return field;
}

PenaltyField penalty_field_deterministic(const LevyModel& model, const Functional& f,
                                         const FrequencyGrid& grid, std::size_t n,
                                         const PenaltyConfig& cfg) {
    cfg.validate();
    require(n >= 2, "penalty_field_deterministic: need n >= 2");
    PenaltyField field;
    field.grid = grid;
    field.n = n;
    field.variant = PenaltyVariant::Deterministic;
    field.ratio.resize(grid.point_count());
    field.invW.resize(grid.point_count());
    for (int idx = 0; idx < grid.point_count(); ++idx) {
        const double u = grid.node(idx);
        field.ratio[idx] = std::abs(functional_fourier(f, -u)) / std::abs(char_fn(model, u));
        field.invW[idx] = 1.0 / weight(u, cfg.delta);
    }
    return field;
}

SigmaX sigma_x_tilde(const PenaltyField& field, const Kernel& kernel, int m, int k,
                     const PenaltyConfig& cfg) {
    require(k > m && m >= 0, "sigma_x_tilde: requires k > m >= 0");
    const FrequencyGrid& grid = field.grid;
    const int hb = band_half_index(grid, k); // Delta_{m,k}FK vanishes beyond k*pi
    const int c = grid.center();

    std::vector<double> a1Terms, a2Terms;
    a1Terms.reserve(2 * hb + 1);
    a2Terms.reserve(2 * hb + 1);
    for (int j = -hb; j <= hb; ++j) {
        const double u = grid.step * j;
        const double dfk = std::abs(kernel_diff(kernel, m, k, u));
        const double w = (j == -hb || j == hb) ? 0.5 * grid.step : grid.step;
        const double base = field.ratio[c + j] * dfk * field.invW[c + j];
        a1Terms.push_back(w * base);
        a2Terms.push_back(w * base * base);
    }
    const double a1 = pairwise_sum(a1Terms);
    const double a2 = pairwise_sum(a2Terms);

    SigmaX out;
    const double branch1 = std::isinf(cfg.cbar1) ? kInf : cfg.cbar1 * a2;
    const double branch2 = cfg.cbar2 * a1 * a1;
    out.sigmaSq = std::min(branch1, branch2) / (2.0 * kPi * kPi);
    out.x = a1 / (2.0 * kPi * std::sqrt(static_cast<double>(field.n)));
    return out;
}

SigmaX sigma_x_tilde(const SplitSample& sample, const Functional& f, const Kernel& kernel,
                     int m, int k, const PenaltyConfig& cfg, const QuadratureSpec& q) {
    require(k > m && m >= 0, "sigma_x_tilde: requires k > m >= 0");
    const FrequencyGrid grid = q.band_grid(k);
    const GridEcf g = ecf_grid(sample, grid, /*withDeriv=*/false);
    return sigma_x_tilde(penalty_field(g, f, cfg), kernel, m, k, cfg);
}

double lambda_tilde(double x, double sigmaSq, int m, int k, std::size_t n,
                    const PenaltyConfig& cfg) {
    require(k > m, "lambda_tilde: requires k > m");
    require(n >= 2, "lambda_tilde: requires n >= 2");
    cfg.validate();
    const double span = static_cast<double>(k - m);
    const double nx = static_cast<double>(n) * x * span;
    const double inner = std::log(clamp_e(nx));           // >= 1
    const double nested = std::log(clamp_e(inner));       // >= 1
    const double xLog = std::log(clamp_e(x * x * span * span));
    const double first = (8.0 / cfg.eta) * nested * nested * inner * xLog;
    const double second = std::log(clamp_e(sigmaSq * span * span));
    return std::max(first, second);
}

double correction(const PenaltyField& field, const Kernel& kernel, int m, int k,
                  const PenaltyConfig& cfg) {
    require(field.n >= 2, "correction: requires n >= 2");
    const SigmaX sx = sigma_x_tilde(field, kernel, m, k, cfg);
    const double lambda = lambda_tilde(sx.x, sx.sigmaSq, m, k, field.n, cfg);
    const double nd = static_cast<double>(field.n);
    const double kappaTerm = 16.0 * (2.5 * cfg.kappa) * (2.5 * cfg.kappa) * std::log(nd);
    return (cfg.cPen * cfg.c1 * lambda * lambda + kappaTerm) *
           std::max(sx.sigmaSq, sx.x * sx.x) / nd;
}

double correction(const SplitSample& sample, const Functional& f, const Kernel& kernel,
                  int m, int k, const PenaltyConfig& cfg, const QuadratureSpec& q) {
    require(k > m && m >= 0, "correction: requires k > m >= 0");
    const FrequencyGrid grid = q.band_grid(k);
    const GridEcf g = ecf_grid(sample, grid, /*withDeriv=*/false);
    return correction(penalty_field(g, f, cfg), kernel, m, k, cfg);
}

double penalty(const PenaltyField& field, const Kernel& kernel, int m,
               const PenaltyConfig& cfg) {
    require(m >= 1, "penalty: requires m >= 1");
    return correction(field, kernel, 0, m, cfg);
}

const PairEntry& PenaltyTable::at(int m, int k) const {
    const auto it = pairs.find({m, k});
    if (it == pairs.end())
        throw std::invalid_argument("PenaltyTable::at: pair not tabulated");
    return it->second;
}

PenaltyTable build_penalty_table(const PenaltyField& field, const Kernel& kernel,
                                 const std::vector<int>& mGrid, const PenaltyConfig& cfg) {
    require(!mGrid.empty(), "build_penalty_table: candidate grid must be nonempty");
    require(mGrid.front() >= 1, "build_penalty_table: candidates must be >= 1");
    require(std::is_sorted(mGrid.begin(), mGrid.end()) &&
                std::adjacent_find(mGrid.begin(), mGrid.end()) == mGrid.end(),
            "build_penalty_table: candidate grid must be strictly ascending");

    PenaltyTable table;
    table.mGrid = mGrid;
    table.variant = field.variant;
    table.n = field.n;
    table.pen.reserve(mGrid.size());
    for (std::size_t i = 0; i < mGrid.size(); ++i) {
        for (std::size_t j = i + 1; j < mGrid.size(); ++j) {
            const int m = mGrid[i], k = mGrid[j];
            PairEntry entry;
            const SigmaX sx = sigma_x_tilde(field, kernel, m, k, cfg);
            entry.sigmaSq = sx.sigmaSq;
            entry.x = sx.x;
            entry.lambda = lambda_tilde(sx.x, sx.sigmaSq, m, k, field.n, cfg);
            entry.corr = correction(field, kernel, m, k, cfg);
            table.pairs.emplace(std::make_pair(m, k), entry);
        }
        table.pen.push_back(penalty(field, kernel, mGrid[i], cfg));
    }
    return table;
}

SelectionResult select_m_hat(const std::vector<EstimateRecord>& estimates,
                             const PenaltyTable& table, const PenaltyConfig& cfg) {
    require(!table.mGrid.empty(), "select_m_hat: empty candidate grid");
    require(estimates.size() == table.mGrid.size(),
            "select_m_hat: estimates and table cover different grids");
    for (std::size_t i = 0; i < estimates.size(); ++i)
        require(estimates[i].m == table.mGrid[i],
                "select_m_hat: estimates and table cover different grids");

    SelectionResult result;
    result.criterion.resize(table.mGrid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < table.mGrid.size(); ++i) {
        double sup = 0.0; // sup over the empty set (largest m) is 0
        bool first = true;
        for (std::size_t j = i + 1; j < table.mGrid.size(); ++j) {
            const double diff = estimates[j].thetaHat - estimates[i].thetaHat;
            const double term =
                diff * diff - table.at(table.mGrid[i], table.mGrid[j]).corr;
            sup = first ? term : std::max(sup, term);
            first = false;
        }
        if (cfg.positivePart) sup = std::max(sup, 0.0);
        result.criterion[i] = sup + table.pen[i];
        if (result.criterion[i] < result.criterion[best]) best = i;
    }
    result.mHat = table.mGrid[best];
    result.thetaHatAdaptive = estimates[best].thetaHat;
    return result;
}

OracleSelection oracle_m_star(const LevyModel& model, const Functional& f,
                              const Kernel& kernel, const std::vector<int>& mGrid,
                              const PenaltyConfig& cfg, std::size_t n,
                              const QuadratureSpec& q) {
    require(!mGrid.empty(), "oracle_m_star: empty candidate grid");
    require(mGrid.front() >= 1, "oracle_m_star: candidates must be >= 1");
    require(std::is_sorted(mGrid.begin(), mGrid.end()) &&
                std::adjacent_find(mGrid.begin(), mGrid.end()) == mGrid.end(),
            "oracle_m_star: candidate grid must be strictly ascending");
    q.validate();
    const int maxM = mGrid.back();
    // Master grid with step pi/J so every band edge k*pi lands on a node;
    // J is chosen to meet (at least) the requested node count at the top band.
    const int J = std::max(8, (q.nodes + 2 * maxM - 1) / (2 * maxM));
    const FrequencyGrid grid{kPi / J, J * maxM};
    const PenaltyField field = penalty_field_deterministic(model, f, grid, n, cfg);

    OracleSelection sel;
    sel.thetaM.reserve(mGrid.size());
    sel.pen.reserve(mGrid.size());
    for (int m : mGrid) {
        sel.thetaM.push_back(smoothed_target(model, f, kernel, m, q));
        sel.pen.push_back(penalty(field, kernel, m, cfg));
    }
    sel.criterion.resize(mGrid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < mGrid.size(); ++i) {
        double sup = 0.0; // k = m contributes |theta_m - theta_m|^2 = 0
        for (std::size_t j = i + 1; j < mGrid.size(); ++j) {
            const double diff = sel.thetaM[j] - sel.thetaM[i];
            sup = std::max(sup, diff * diff);
        }
        sel.criterion[i] = sup + sel.pen[i];
        if (sel.criterion[i] < sel.criterion[best]) best = i;
    }
    sel.mStar = mGrid[best];
    return sel;
}

} // namespace levyest
