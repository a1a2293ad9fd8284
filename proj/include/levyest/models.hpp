// SPDX-License-Identifier: MIT
//
// Catalog of pure-jump, finite-variation, zero-drift Levy models with finite
// exponential moments: compound Poisson processes (exponential, gamma or
// uniform jumps), the gamma subordinator, and the bilateral gamma process.
// Every entry carries closed-form characteristic quantities
//   Psi(u)   = int (e^{iux} - 1) nu(dx)        (characteristic exponent)
//   phi(u)   = exp(Delta Psi(u))               (law of one increment X_Delta)
//   Fmu(u)   = Psi'(u) / i                     (Fourier transform of mu)
// where mu(dx) = x nu(dx) is the finite signed target measure, plus exact
// increment simulation and independent ground-truth values for theta=<f,mu>.

#ifndef LEVYEST_MODELS_HPP
#define LEVYEST_MODELS_HPP

#include <complex>
#include <cstdint>
#include <string>

#include "levyest/functionals.hpp"
#include "levyest/split_sample.hpp"

namespace levyest {

enum class ModelKind {
    ZeroMeasure,
    CompoundPoisson,
    GammaSubordinator,
    BilateralGamma,
};

enum class JumpKind { Exponential, Gamma, Uniform };

// Jump-size distribution of a compound Poisson process.
struct JumpLaw {
    JumpKind kind = JumpKind::Exponential;
    double a = 1.0; // scale (exponential), shape (gamma), lower bound (uniform)
    double b = 0.0; // unused (exponential), scale (gamma), upper bound (uniform)

    static JumpLaw exponential(double scale);
    static JumpLaw gamma(double shape, double scale);
    static JumpLaw uniform(double lo, double hi);
};

// Polynomial/exponential lower envelope for the decay of phi = phi_Delta:
//   |phi(u)| >= CPhi (1+u^2)^{-beta/2} exp(-cPhi |u|^rho).
// Stored analytically per catalog entry (conservative but valid constants).
struct DecayProfile {
    double beta = 0.0;
    double rho = 0.0;
    double cPhi = 0.0;
    double CPhi = 1.0;
};

// The two variance constants of the risk bound:
//   c1 = C (int |Psi''| + 2 int |Psi'|^2),   c2 = C (||Psi''||_oo + 2 ||Psi'||_oo^2).
// c1Finite is declared analytically per model (uniform jumps make int |Psi''|
// diverge); when false, c1 is +infinity.
struct VarianceConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    bool c1Finite = true;
};

struct LevyModel {
    ModelKind kind = ModelKind::ZeroMeasure;
    std::string name;
    double delta = 1.0; // observation step

    // Compound Poisson parameters.
    double intensity = 0.0;
    JumpLaw jump;

    // Gamma subordinator / bilateral gamma parameters (positive/negative arm).
    double shapePos = 0.0, scalePos = 1.0;
    double shapeNeg = 0.0, scaleNeg = 1.0;

    static LevyModel zero_measure(double delta = 1.0);
    static LevyModel compound_poisson(double intensity, JumpLaw jump, double delta = 1.0);
    static LevyModel gamma_subordinator(double shape, double scale, double delta = 1.0);
    static LevyModel bilateral_gamma(double shapePos, double scalePos,
                                     double shapeNeg, double scaleNeg, double delta = 1.0);
};

// Psi(u) and its first two derivatives, in closed form.
Complex char_exponent(const LevyModel& model, double u);
Complex char_exponent_deriv(const LevyModel& model, double u);
Complex char_exponent_second(const LevyModel& model, double u);

// phi_Delta(u) = exp(delta * Psi(u)); never zero.
Complex char_fn(const LevyModel& model, double u);

// Fmu(u) = Psi'(u)/i, the Fourier transform of mu(dx) = x nu(dx).
Complex mu_fourier(const LevyModel& model, double u);

// Lebesgue density of mu at x (defined off the discontinuity set).
double mu_density(const LevyModel& model, double x);

// True whether the mu-density is continuous at x (Dirac functionals are only
// admissible at such points).
bool mu_density_continuous_at(const LevyModel& model, double x);

// Exact moments of one increment: E X_Delta = delta int x nu(dx) and
// Var X_Delta = delta int x^2 nu(dx).
double increment_mean(const LevyModel& model);
double increment_variance(const LevyModel& model);

// Draws 2n i.i.d. increments of X_Delta, split into the two disjoint halves.
// Deterministically reproducible from the seed. Rejects n = 0.
SplitSample sample_increments(const LevyModel& model, std::size_t n, std::uint64_t seed);

// Variance constants evaluated by adaptive quadrature over [-window, window]
// plus analytic tail integrals, and grid maximization for the sup norms.
// universalC is the unspecified universal constant of the risk bound.
VarianceConstants variance_constants(const LevyModel& model, double universalC = 1.0,
                                     double window = 200.0);

// Analytic decay envelope of phi_Delta (see DecayProfile).
DecayProfile decay_profile(const LevyModel& model);

// Half the supremum of eta with E exp(eta |X_1|) < infinity (capped at 1 for
// models with bounded or zero jumps); the exponential-moment parameter used
// by the penalty weights.
double default_eta(const LevyModel& model);

// Polynomial decay index of Fmu: |Fmu(u)| <= C (1+|u|)^{-index}. Used as the
// default mu-smoothness input of the rate calculator.
double mu_decay_index(const LevyModel& model);

// Ground truth theta = <f, mu> = int f dmu by closed form where available,
// otherwise high-resolution quadrature of int f(x) (mu-density)(x) dx.
// Accuracy <= 1e-8 relative on the catalog. Rejects Dirac-type functionals
// at discontinuity points of the mu-density, and regular functionals that
// carry no pointwise form.
double true_theta(const LevyModel& model, const Functional& f);

} // namespace levyest

#endif // LEVYEST_MODELS_HPP
