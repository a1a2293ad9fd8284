// SPDX-License-Identifier: MIT
//
// Empirical characteristic function machinery. From the two disjoint sample
// halves we form
//   phiHat(u)      = (1/n) sum_{k<=n}  e^{iu Z_k}        (ecf half)
//   phiHatDeriv(u) = (1/n) sum_{k>n}   i Z_k e^{iu Z_k}  (derivative half)
// together with the logarithmic weight w, the classical indicator-truncated
// inverse 1(|phiHat| >= (Delta n)^{-1/2}) / phiHat, and the log-truncated
// version that floors |phiHat| at a_n(u) = kappa sqrt(log n) w(u)^{-1} n^{-1/2}.

#ifndef LEVYEST_ECF_HPP
#define LEVYEST_ECF_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "levyest/models.hpp"
#include "levyest/quadrature.hpp"
#include "levyest/split_sample.hpp"

namespace levyest {

enum class InverseVariant { NeumannIndicator, LogTruncated };

// Constants of the truncation rule. The adaptive calibration requires
// kappa >= 2 (sqrt(4 c1) + gamma); the default kappa is exactly that value
// for the default c1 = 1, gamma = 0.1.
struct TruncationConfig {
    double kappa = 4.2;
    double delta = 0.25; // weight exponent: w(u) = (log(e+|u|))^{-1/2-delta}
    double gamma = 0.1;
    InverseVariant variant = InverseVariant::LogTruncated;
};

// w(u) = (log(e+|u|))^{-1/2-delta}; even, w(0) = 1, decreasing in |u|.
double weight(double u, double delta);

// a_n(u) = kappa (log n)^{1/2} w(u)^{-1} n^{-1/2}; requires n >= 2.
double truncation_floor(std::size_t n, double u, const TruncationConfig& cfg);

// Pointwise empirical quantities (reference implementations; the grid batch
// below is the fast path).
Complex ecf(const SplitSample& sample, double u);
Complex ecf_deriv(const SplitSample& sample, double u);

// Value-level truncation rules, shared by the pointwise and grid paths.
// neumann: 1/phiHat when |phiHat| >= (Delta n)^{-1/2}, else 0.
Complex neumann_inverse_value(Complex phiHat, std::size_t n, double deltaStep);
// log-truncated: phiHat when |phiHat| >= a_n(u), else the real scalar a_n(u)
// itself (the floor replaces the value, it does not rescale the phase).
Complex log_truncated_value(Complex phiHat, double u, std::size_t n,
                            const TruncationConfig& cfg);

Complex neumann_inverse(const SplitSample& sample, double u);
Complex log_truncated_cf(const SplitSample& sample, double u, const TruncationConfig& cfg);

// Both empirical functions evaluated on every node of a symmetric uniform
// grid in a single pass over the increments.
struct GridEcf {
    FrequencyGrid grid;
    std::vector<Complex> phi;      // phiHat at grid.node(j)
    std::vector<Complex> phiDeriv; // phiHatDeriv at grid.node(j)
    std::size_t n = 0;
    double delta = 1.0;
};

// withDeriv = false skips the derivative half (used by statistics that only
// need phiHat), halving the work.
GridEcf ecf_grid(const SplitSample& sample, const FrequencyGrid& grid,
                 bool withDeriv = true);

// max over the grid of w(u) |phiHat(u) - phi_Delta(u)|: the weighted uniform
// deviation statistic whose expectation obeys the n^{-1/2} concentration law.
double uniform_deviation_stat(const SplitSample& sample, const LevyModel& model,
                              const FrequencyGrid& grid, double weightDelta);

} // namespace levyest

#endif // LEVYEST_ECF_HPP
