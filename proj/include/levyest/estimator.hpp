// SPDX-License-Identifier: MIT
//
// Frequency-domain quadrature engine. The estimator of theta = <f, mu> is
//   thetaHat_m = Re[ (1/2pi) int Ff(-u) FK(u/m) (1/Delta) phiHatDeriv(u)
//                              * inverse(u) / i du ],
// where inverse(u) is one of the truncated reciprocals of the empirical
// characteristic function. The same engine evaluates the deterministic
// smoothed target theta_m (with the analytic Fmu), the two-term risk bound,
// bias bounds, and the theoretical rate exponents.

#ifndef LEVYEST_ESTIMATOR_HPP
#define LEVYEST_ESTIMATOR_HPP

#include <stdexcept>
#include <string>

#include "levyest/ecf.hpp"
#include "levyest/functionals.hpp"
#include "levyest/models.hpp"
#include "levyest/quadrature.hpp"

namespace levyest {

// Signalled when doubling the node count moves a quadrature value by more
// than the declared tolerance (or when an (f, K) pairing is not integrable).
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureSpec {
    int nodes = 8192;          // trapezoid panel count; even, >= 64
    double supportScale = 1.0; // grid covers [-pi m supportScale, pi m supportScale]
    bool refine = false;       // double nodes until convergence, else signal
    double relTol = 1e-6;      // convergence tolerance (relative)
    int maxNodes = 1 << 17;    // refinement cap

    void validate() const;
    // Symmetric trapezoid grid over [-pi m supportScale, +pi m supportScale].
    FrequencyGrid band_grid(int m) const;
};

struct EstimateRecord {
    int m = 1;
    double thetaHat = 0.0;
    double imagResidual = 0.0; // |discarded imaginary part| (diagnostic)
    InverseVariant inverseVariant = InverseVariant::LogTruncated;
};

// Estimator from a precomputed ECF grid; the band [-m pi, m pi] must lie on
// grid nodes (the master grid spacing must divide pi/1 evenly; see
// FrequencyGrid::band_half). This is the fast path used by experiments.
EstimateRecord kernel_estimate_grid(const GridEcf& gridEcf, const Functional& f,
                                    const Kernel& kernel, int m,
                                    const TruncationConfig& cfg);

// Convenience form matching the batch signature: builds the band grid from q,
// evaluates the ECF on it, and (when q.refine) re-evaluates on doubled grids
// until two successive node counts agree to q.relTol.
EstimateRecord kernel_estimate(const SplitSample& sample, const Functional& f,
                               const Kernel& kernel, int m,
                               const TruncationConfig& cfg, const QuadratureSpec& q);

// theta_m = Re[(1/2pi) int Ff(-u) FK(u/m) Fmu(u) du], the deterministic
// smoothed target the estimator concentrates around.
double smoothed_target(const LevyModel& model, const Functional& f,
                       const Kernel& kernel, int m, const QuadratureSpec& q);

// The two terms of the risk bound at bandwidth h = 1/m:
//   biasSquared = 2 |theta - theta_m|^2
//   varBound    = T^{-1}/(2 pi^2) min{ C1 int |FK(hu)|^2 |Ff(-u)/phi(u)|^2 du,
//                                      C2 (int |FK(hu)| |Ff(-u)/phi(u)| du)^2 }
// with T = Delta n; the C1 branch is skipped when C1 = +infinity.
struct RiskBound {
    double biasSquared = 0.0;
    double varBound = 0.0;
    double c1Branch = 0.0; // +infinity when unavailable
    double c2Branch = 0.0;
    bool usedC1 = false;   // ties broken toward the C2 branch
};

RiskBound risk_bound(const LevyModel& model, const Functional& f, const Kernel& kernel,
                     int m, std::size_t n, const QuadratureSpec& q,
                     double universalC = 1.0);

// ---------------------------------------------------------------------------
// Theoretical rates.

enum class SmoothnessRegime { Sobolev, Hoelder };

struct RateSpec {
    double a = 0.0;       // mu-smoothness index
    double s = 0.0;       // functional Fourier-decay index
    double beta = 0.0;    // polynomial decay of phi per unit time
    double rho = 0.0;     // exponential decay order of phi
    double delta = 1.0;   // observation step
    bool c1Finite = true;
    SmoothnessRegime regime = SmoothnessRegime::Sobolev;

    void validate() const; // rejects a <= -s
};

// r_{T} as a closed-form descriptor: value(T) = logPow-th power of log T times
// T (or n) to the exponent. Exactly one of usesN / usesLogOverDelta holds for
// the n-based slow cell and the severely ill-posed rho > 0 cell respectively.
struct RateValue {
    double exponent = 0.0;     // power of T (or of n / of (log T)/Delta)
    double logPow = 0.0;       // power of log T multiplying the T-power
    bool usesN = false;        // rate expressed in n rather than T
    bool usesLogOverDelta = false; // rate is ((log T)/Delta)^{exponent}
    double value = 0.0;        // numeric value at the queried T
    std::string description;   // human-readable form, e.g. "T^-0.8"
};

// Evaluates the rate table cell for the spec at time horizon T = Delta n.
RateValue theoretical_rate(const RateSpec& spec, double T);

// Effective log-log slope of the rate between horizons T1 < T2 (exact for
// pure powers; secant slope for the log-corrected and rho > 0 cells).
double rate_log_slope(const RateSpec& spec, double T1, double T2);

// ---------------------------------------------------------------------------
// Bias bounds: biasSquared <= constant * h^{2a+2s}.

struct BiasConstants {
    double Mf = 1.0;           // Sobolev mass of f:  int |Ff(-u)|^2 (1+u^2)^s du
    double Mmu = 1.0;          // Sobolev mass of mu: int |Fmu(u)|^2 (1+u^2)^a du
    double kernelFactor = -1.0; // sup_u |1-FK(hu)|^2 (1+u^2)^{-a-s} / h^{2a+2s};
                                // negative means "use the band-limited value
                                // pi^{-2a-2s}" (valid when order >= a+s)
    double cB = 1.0;           // unspecified-constant form (Hoelder regime)
};

double bias_bound(const RateSpec& spec, double h, const BiasConstants& constants);

} // namespace levyest

#endif // LEVYEST_ESTIMATOR_HPP
