// SPDX-License-Identifier: MIT

#include "levyest/functionals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace levyest {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
} // namespace

Functional Functional::gaussian(double center, double width) {
    if (!(width > 0.0))
        throw std::invalid_argument("Functional::gaussian: width must be positive");
    Functional f;
    f.kind = FunctionalKind::Regular;
    f.name = "gaussian";
    f.s = std::numeric_limits<double>::infinity();
    // Effective support: the profile is < 1e-55 beyond 16 widths, so oracles
    // may clip integrals there without measurable error.
    f.hasSupport = true;
    f.suppLo = center - 16.0 * width;
    f.suppHi = center + 16.0 * width;
    f.fourier = [center, width](double u) -> Complex {
        return width * std::sqrt(2.0 * kPi) * std::exp(-0.5 * width * width * u * u) *
               std::exp(kI * (u * center));
    };
    f.pointwise = [center, width](double x) {
        const double t = (x - center) / width;
        return std::exp(-0.5 * t * t);
    };
    return f;
}

Functional Functional::compact_bump(double lo, double hi) {
    if (!(lo < hi))
        throw std::invalid_argument("Functional::compact_bump: need lo < hi");
    Functional f;
    f.kind = FunctionalKind::CompactBump;
    f.name = "bump";
    f.s = 1.0;
    f.hasSupport = true;
    f.suppLo = lo;
    f.suppHi = hi;
    // Indicator of [lo, hi]: Ff(u) = (e^{iu hi} - e^{iu lo}) / (iu), with the
    // removable singularity at u = 0 filled by the interval length.
    f.fourier = [lo, hi](double u) -> Complex {
        if (std::abs(u) * std::max(std::abs(lo), std::abs(hi)) < 1e-8) {
            // Series around 0: (hi - lo) + iu (hi^2 - lo^2)/2 + O(u^2).
            return Complex(hi - lo, 0.5 * u * (hi * hi - lo * lo));
        }
        return (std::exp(kI * (u * hi)) - std::exp(kI * (u * lo))) / (kI * u);
    };
    f.pointwise = [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; };
    return f;
}

Functional Functional::dirac_point(double x0) {
    Functional f;
    f.kind = FunctionalKind::DiracPoint;
    f.name = "dirac";
    f.s = 0.0;
    f.x0 = x0;
    f.hasSupport = true;
    f.suppLo = f.suppHi = x0;
    f.fourier = [x0](double u) -> Complex { return std::exp(kI * (u * x0)); };
    return f;
}

Functional Functional::dirac_derivative(double x0, int k) {
    if (k < 1)
        throw std::invalid_argument("Functional::dirac_derivative: order must be >= 1");
    Functional f;
    f.kind = FunctionalKind::DiracDerivative;
    f.name = "dirac_deriv";
    f.s = -static_cast<double>(k);
    f.x0 = x0;
    f.order = k;
    f.hasSupport = true;
    f.suppLo = f.suppHi = x0;
    f.fourier = [x0, k](double u) -> Complex {
        return std::pow(-kI * u, static_cast<double>(k)) * std::exp(kI * (u * x0));
    };
    return f;
}

Functional Functional::zero() {
    Functional f;
    f.kind = FunctionalKind::Regular;
    f.name = "zero";
    f.s = std::numeric_limits<double>::infinity();
    f.fourier = [](double) -> Complex { return Complex(0.0, 0.0); };
    f.pointwise = [](double) { return 0.0; };
    return f;
}

Kernel Kernel::sinc() {
    Kernel k;
    k.kind = KernelKind::Sinc;
    k.name = "sinc";
    k.order = std::numeric_limits<double>::infinity();
    return k;
}

Kernel Kernel::taper(double power) {
    if (!(power > 0.0))
        throw std::invalid_argument("Kernel::taper: power must be positive");
    Kernel k;
    k.kind = KernelKind::PolynomialTaper;
    k.name = "taper";
    k.taperPower = power;
    k.order = power;
    return k;
}

Complex functional_fourier(const Functional& f, double u) {
    if (!f.fourier)
        throw std::invalid_argument("functional_fourier: entry has no Fourier form");
    return f.fourier(u);
}

double kernel_ft(const Kernel& kernel, double v) {
    const double av = std::abs(v);
    if (av > kPi) return 0.0;
    switch (kernel.kind) {
        case KernelKind::Sinc:
            return 1.0;
        case KernelKind::PolynomialTaper:
            return 1.0 - std::pow(av / kPi, kernel.taperPower);
    }
    return 0.0;
}

double kernel_diff(const Kernel& kernel, int m, int k, double u) {
    if (k <= m)
        throw std::invalid_argument("kernel_diff: requires k > m");
    if (m < 0)
        throw std::invalid_argument("kernel_diff: requires m >= 0");
    const double upper = kernel_ft(kernel, u / static_cast<double>(k));
    if (m == 0) {
        // FK(u/0) := 0 for u != 0 and := 1 at u = 0 (bandwidth -> infinity
        // smooths everything away; the limit of FK(u/m) as m -> 0+).
        return (u == 0.0) ? upper - 1.0 : upper;
    }
    return upper - kernel_ft(kernel, u / static_cast<double>(m));
}

} // namespace levyest
