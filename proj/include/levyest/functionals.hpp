// SPDX-License-Identifier: MIT
//
// Catalog of test functionals f and band-limited smoothing kernels K, both
// represented primarily through their Fourier transforms Ff and FK. The
// catalog spans the regimes of interest: globally smooth targets (Gaussian),
// set indicators (compact bump, for integrals of the jump measure), and point
// / derivative evaluation (Dirac forms with polynomially growing transforms).

#ifndef LEVYEST_FUNCTIONALS_HPP
#define LEVYEST_FUNCTIONALS_HPP

#include <complex>
#include <functional>
#include <string>

namespace levyest {

using Complex = std::complex<double>;

enum class FunctionalKind { Regular, DiracPoint, DiracDerivative, CompactBump };

// A linear functional f acting on the finite signed measure mu, represented
// by u |-> Ff(u) = int e^{iux} f(x) dx (interpreted distributionally for the
// Dirac kinds). `s` is the polynomial Fourier-decay index: |Ff(u)| <=
// C_f (1+|u|)^{-s}; Dirac point mass has s = 0, the k-th derivative s = -k,
// and entries with super-polynomial decay store s = +infinity.
struct Functional {
    FunctionalKind kind = FunctionalKind::Regular;
    std::string name;
    std::function<Complex(double)> fourier; // required for estimation
    std::function<double(double)> pointwise; // optional, used by oracles
    double s = 0.0;
    bool hasSupport = false;
    double suppLo = 0.0, suppHi = 0.0; // valid when hasSupport
    double x0 = 0.0;                   // Dirac location
    int order = 0;                     // Dirac derivative order k

    // f(x) = exp(-(x-center)^2 / (2 width^2)); Ff has Gaussian decay.
    static Functional gaussian(double center = 0.0, double width = 1.0);
    // Indicator of [lo, hi]; theta = mu([lo, hi]); |Ff| ~ |u|^{-1}.
    static Functional compact_bump(double lo = 0.5, double hi = 1.5);
    // Point evaluation of the mu-density at x0; Ff(u) = e^{iux0}.
    static Functional dirac_point(double x0);
    // k-th derivative evaluation at x0; Ff(u) = (-iu)^k e^{iux0}.
    static Functional dirac_derivative(double x0, int k);
    // Ff identically zero (degenerate edge-case entry).
    static Functional zero();
};

enum class KernelKind { Sinc, PolynomialTaper };

// Band-limited smoothing kernel, represented by FK supported on [-pi, pi]
// with FK(0) = 1. The bandwidth h = 1/m rescales it to FK(u/m) with support
// [-m pi, m pi].
struct Kernel {
    KernelKind kind = KernelKind::Sinc;
    std::string name;
    double taperPower = 0.0;        // p for the polynomial taper
    double order = 0.0;             // kernel order (+infinity for sinc)

    static Kernel sinc();
    static Kernel taper(double power);
};

// Ff(u).
Complex functional_fourier(const Functional& f, double u);

// FK(v); exactly zero for |v| > pi.
double kernel_ft(const Kernel& kernel, double v);

// Delta_{m,k} FK(u) = FK(u/k) - FK(u/m) for k > m >= 0, with the convention
// FK(u/0) := 0 for u != 0 and := 1 at u = 0 (the m = 0 slot represents the
// fully smoothed-away estimate, so the pair difference at m = 0 reduces to
// FK(u/k) away from the origin). Rejects k <= m.
double kernel_diff(const Kernel& kernel, int m, int k, double u);

} // namespace levyest

#endif // LEVYEST_FUNCTIONALS_HPP
