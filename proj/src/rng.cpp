// SPDX-License-Identifier: MIT

#include "levyest/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levyest {

double Rng::normal() {
    // Box-Muller, cosine branch only: one draw per pair of uniforms keeps the
    // consumption pattern (and hence every stream) trivially reproducible.
    const double u1 = gen_.next_unit();
    const double u2 = gen_.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential(double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("Rng::exponential: scale must be positive");
    return -scale * std::log(gen_.next_unit());
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("Rng::gamma: shape and scale must be positive");
    if (shape < 1.0) {
        // Boost to shape + 1 and thin by U^{1/shape}.
        const double boosted = gamma(shape + 1.0, scale);
        return boosted * std::pow(gen_.next_unit(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = gen_.next_unit();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

long Rng::poisson(double mean) {
    if (!(mean >= 0.0))
        throw std::invalid_argument("Rng::poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    // Product-of-uniforms inversion, exact for modest means; larger means are
    // split into <= 30-sized pieces (a sum of independent Poisson draws is
    // exactly Poisson, so no approximation enters).
    constexpr double kPieceLimit = 30.0;
    long pieces = static_cast<long>(std::ceil(mean / kPieceLimit));
    if (pieces < 1) pieces = 1;
    const double part = mean / static_cast<double>(pieces);
    const double limit = std::exp(-part);
    long total = 0;
    for (long i = 0; i < pieces; ++i) {
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= gen_.next_unit();
        } while (p > limit);
        total += k - 1;
    }
    return total;
}

} // namespace levyest
