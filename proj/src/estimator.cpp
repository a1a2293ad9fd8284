// SPDX-License-Identifier: MIT

#include "levyest/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace levyest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI(0.0, 1.0);

// Index distance from the origin to the band edge m*pi on this grid; throws
// unless the edge falls exactly on a node (within 1 part in 1e9).
int band_half_index(const FrequencyGrid& grid, int m) {
    const double edge = m * kPi;
    const double exact = edge / grid.step;
    const int idx = static_cast<int>(std::lround(exact));
    if (std::abs(exact - idx) > 1e-9 * std::max(1.0, exact))
        throw std::invalid_argument(
            "band edge m*pi does not fall on a grid node; choose a grid step pi/J");
    if (idx > grid.half)
        throw std::invalid_argument("band m*pi exceeds the precomputed grid extent");
    return idx;
}

} // namespace

void QuadratureSpec::validate() const {
    if (nodes < 64 || nodes % 2 != 0)
        throw std::invalid_argument("QuadratureSpec: nodes must be even and >= 64");
    if (!(supportScale > 0.0))
        throw std::invalid_argument("QuadratureSpec: supportScale must be positive");
    if (!(relTol > 0.0))
        throw std::invalid_argument("QuadratureSpec: relTol must be positive");
    if (maxNodes < nodes)
        throw std::invalid_argument("QuadratureSpec: maxNodes must be >= nodes");
}

FrequencyGrid QuadratureSpec::band_grid(int m) const {
    validate();
    if (m < 1) throw std::invalid_argument("QuadratureSpec: m must be >= 1");
    return make_band_grid(kPi * m * supportScale, nodes);
}

EstimateRecord kernel_estimate_grid(const GridEcf& gridEcf, const Functional& f,
                                    const Kernel& kernel, int m,
                                    const TruncationConfig& cfg) {
    if (m < 1) throw std::invalid_argument("kernel_estimate_grid: m must be >= 1");
    const FrequencyGrid& grid = gridEcf.grid;
    const int hb = band_half_index(grid, m);
    const int c = grid.center();
    const std::size_t n = gridEcf.n;
    const double invDelta = 1.0 / gridEcf.delta;

    std::vector<Complex> terms;
    terms.reserve(2 * hb + 1);
    for (int j = -hb; j <= hb; ++j) {
        const double u = grid.step * j;
        const double fk = kernel_ft(kernel, u / m);
        Complex inverse;
        if (cfg.variant == InverseVariant::NeumannIndicator) {
            inverse = neumann_inverse_value(gridEcf.phi[c + j], n, gridEcf.delta);
        } else {
            inverse = 1.0 / log_truncated_value(gridEcf.phi[c + j], u, n, cfg);
        }
        const double w = (j == -hb || j == hb) ? 0.5 * grid.step : grid.step;
        // Ff(-u) FK(u/m) (1/Delta) phiHat'(u) inverse(u) / i, trapezoid-weighted.
        const Complex term = functional_fourier(f, -u) * fk *
                             (invDelta * gridEcf.phiDeriv[c + j]) * inverse / kI;
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw QuadratureError("kernel_estimate: non-finite integrand value");
        terms.push_back(w * term);
    }
    const Complex total = pairwise_sum(terms) / (2.0 * kPi);

    EstimateRecord rec;
    rec.m = m;
    rec.thetaHat = total.real();
    rec.imagResidual = std::abs(total.imag());
    rec.inverseVariant = cfg.variant;
    return rec;
}

EstimateRecord kernel_estimate(const SplitSample& sample, const Functional& f,
                               const Kernel& kernel, int m,
                               const TruncationConfig& cfg, const QuadratureSpec& q) {
    q.validate();
    auto evaluate = [&](int nodes) {
        const FrequencyGrid grid = make_band_grid(kPi * m * q.supportScale, nodes);
        return kernel_estimate_grid(ecf_grid(sample, grid), f, kernel, m, cfg);
    };
    EstimateRecord rec = evaluate(q.nodes);
    if (!q.refine) return rec;
    for (int nodes = q.nodes; nodes < q.maxNodes;) {
        nodes *= 2;
        const EstimateRecord finer = evaluate(nodes);
        if (std::abs(finer.thetaHat - rec.thetaHat) <=
            q.relTol * (std::abs(finer.thetaHat) + 1e-12))
            return finer;
        rec = finer;
    }
    std::ostringstream msg;
    msg << "kernel_estimate: no quadrature convergence at m=" << m << " up to "
        << q.maxNodes << " nodes";
    throw QuadratureError(msg.str());
}

namespace {

// Shared driver: Re[(1/2pi) int_{-m pi}^{m pi} integrand(u) du] with
// optional refinement-until-stable.
double band_integral(const std::function<Complex(double)>& integrand, int m,
                     const QuadratureSpec& q, double* imagResidual) {
    q.validate();
    if (m < 1) throw std::invalid_argument("band_integral: m must be >= 1");
    auto evaluate = [&](int nodes, double* imag) {
        const FrequencyGrid grid = make_band_grid(kPi * m * q.supportScale, nodes);
        std::vector<Complex> terms;
        terms.reserve(grid.point_count());
        for (int idx = 0; idx < grid.point_count(); ++idx) {
            const Complex v = integrand(grid.node(idx));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw QuadratureError("band integral: non-finite integrand value");
            terms.push_back(grid.trap_weight(idx) * v);
        }
        const Complex total = pairwise_sum(terms) / (2.0 * kPi);
        if (imag) *imag = std::abs(total.imag());
        return total.real();
    };
    double value = evaluate(q.nodes, imagResidual);
    if (!q.refine) return value;
    for (int nodes = q.nodes; nodes < q.maxNodes;) {
        nodes *= 2;
        const double finer = evaluate(nodes, imagResidual);
        if (std::abs(finer - value) <= q.relTol * (std::abs(finer) + 1e-12)) return finer;
        value = finer;
    }
    throw QuadratureError("band integral: no quadrature convergence within node cap");
}

} // namespace

double smoothed_target(const LevyModel& model, const Functional& f,
                       const Kernel& kernel, int m, const QuadratureSpec& q) {
    const auto integrand = [&](double u) -> Complex {
        const double fk = kernel_ft(kernel, u / m);
        if (fk == 0.0) return Complex(0.0, 0.0);
        return functional_fourier(f, -u) * fk * mu_fourier(model, u);
    };
    return band_integral(integrand, m, q, nullptr);
}

RiskBound risk_bound(const LevyModel& model, const Functional& f, const Kernel& kernel,
                     int m, std::size_t n, const QuadratureSpec& q, double universalC) {
    if (m < 1) throw std::invalid_argument("risk_bound: m must be >= 1");
    if (n < 1) throw std::invalid_argument("risk_bound: n must be >= 1");
    q.validate();

    RiskBound out;
    const double theta = true_theta(model, f);
    const double thetaM = smoothed_target(model, f, kernel, m, q);
    out.biasSquared = 2.0 * (theta - thetaM) * (theta - thetaM);

    // A2 = int |FK(u/m)|^2 |Ff(-u)/phi(u)|^2 du, A1 = int |FK| |Ff/phi| du.
    const FrequencyGrid grid = q.band_grid(m);
    std::vector<double> a1Terms, a2Terms;
    a1Terms.reserve(grid.point_count());
    a2Terms.reserve(grid.point_count());
    for (int idx = 0; idx < grid.point_count(); ++idx) {
        const double u = grid.node(idx);
        const double fk = std::abs(kernel_ft(kernel, u / m));
        const double ratio = std::abs(functional_fourier(f, -u)) /
                             std::abs(char_fn(model, u));
        const double w = grid.trap_weight(idx);
        a1Terms.push_back(w * fk * ratio);
        a2Terms.push_back(w * fk * fk * ratio * ratio);
    }
    const double a1 = pairwise_sum(a1Terms);
    const double a2 = pairwise_sum(a2Terms);

    const VarianceConstants vc = variance_constants(model, universalC);
    out.c1Branch = vc.c1Finite ? vc.c1 * a2 : kInf;
    out.c2Branch = vc.c2 * a1 * a1;
    out.usedC1 = out.c1Branch < out.c2Branch; // ties go to the C2 branch
    const double T = model.delta * static_cast<double>(n);
    out.varBound = std::min(out.c1Branch, out.c2Branch) / (2.0 * kPi * kPi * T);
    return out;
}

// ---------------------------------------------------------------------------
// Rates.

void RateSpec::validate() const {
    if (!(a > -s))
        throw std::invalid_argument("RateSpec: requires a > -s");
    if (beta < 0.0 || rho < 0.0)
        throw std::invalid_argument("RateSpec: decay indices must be nonnegative");
    if (!(delta > 0.0))
        throw std::invalid_argument("RateSpec: observation step must be positive");
}

namespace {

std::string power_text(const char* base, double exponent) {
    std::ostringstream os;
    os << base << "^" << exponent;
    return os.str();
}

} // namespace

RateValue theoretical_rate(const RateSpec& spec, double T) {
    spec.validate();
    if (!(T > 1.0))
        throw std::invalid_argument("theoretical_rate: need T > 1");

    RateValue out;
    const double twoAS = 2.0 * spec.a + 2.0 * spec.s;
    const double db = spec.delta * spec.beta;

    if (spec.rho > 0.0) {
        out.usesLogOverDelta = true;
        out.exponent = -twoAS / spec.rho;
        out.value = std::pow(std::log(T) / spec.delta, out.exponent);
        out.description = power_text("(log(T)/Delta)", out.exponent);
        return out;
    }

    // rho = 0: polynomial decay of phi. The threshold on s depends on the
    // regime and on whether the integrated variance constant is finite.
    double threshold;
    double slowExponent;
    bool slowUsesN = false;
    bool logAtBoundary = true;
    if (spec.regime == SmoothnessRegime::Sobolev) {
        if (spec.c1Finite) {
            threshold = db;
            slowExponent = -twoAS / (2.0 * spec.a + 2.0 * db);
            logAtBoundary = false; // boundary cell is plain T^{-1}
        } else {
            threshold = db + 0.5;
            slowExponent = -twoAS / (2.0 * spec.a + 2.0 * db + 1.0);
            slowUsesN = true;
        }
    } else {
        if (spec.c1Finite) {
            threshold = db + 0.5;
            slowExponent = -twoAS / (2.0 * db + 2.0 * spec.a + 1.0);
        } else {
            threshold = db + 1.0;
            slowExponent = -twoAS / (2.0 * spec.a + 2.0 * db + 2.0);
        }
    }

    if (spec.s > threshold || (!logAtBoundary && spec.s == threshold)) {
        out.exponent = -1.0;
        out.value = 1.0 / T;
        out.description = "T^-1";
    } else if (spec.s == threshold) {
        out.exponent = -1.0;
        out.logPow = 1.0;
        out.value = std::log(T) / T;
        out.description = "log(T) T^-1";
    } else if (slowUsesN) {
        out.usesN = true;
        out.exponent = slowExponent;
        out.value = std::pow(T / spec.delta, slowExponent);
        out.description = power_text("n", slowExponent);
    } else {
        out.exponent = slowExponent;
        out.value = std::pow(T, slowExponent);
        out.description = power_text("T", slowExponent);
    }
    return out;
}

double rate_log_slope(const RateSpec& spec, double T1, double T2) {
    if (!(T1 > 1.0) || !(T2 > T1))
        throw std::invalid_argument("rate_log_slope: need 1 < T1 < T2");
    const double r1 = theoretical_rate(spec, T1).value;
    const double r2 = theoretical_rate(spec, T2).value;
    return (std::log(r2) - std::log(r1)) / (std::log(T2) - std::log(T1));
}

double bias_bound(const RateSpec& spec, double h, const BiasConstants& constants) {
    spec.validate();
    if (!(h > 0.0))
        throw std::invalid_argument("bias_bound: bandwidth must be positive");
    const double power = std::pow(h, 2.0 * spec.a + 2.0 * spec.s);
    if (spec.regime == SmoothnessRegime::Hoelder)
        return constants.cB * power;
    double kernelFactor = constants.kernelFactor;
    if (kernelFactor < 0.0)
        kernelFactor = std::pow(kPi, -2.0 * spec.a - 2.0 * spec.s);
    return constants.Mf * constants.Mmu * kernelFactor / (4.0 * kPi * kPi) * power;
}

} // namespace levyest
