// SPDX-License-Identifier: MIT

#include "levyest/ecf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levyest {

double weight(double u, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("weight: delta must be positive");
    return std::pow(std::log(std::numbers::e + std::abs(u)), -0.5 - delta);
}

double truncation_floor(std::size_t n, double u, const TruncationConfig& cfg) {
    if (n < 2)
        throw std::invalid_argument("truncation_floor: need n >= 2");
    if (!(cfg.kappa > 0.0))
        throw std::invalid_argument("truncation_floor: kappa must be positive");
    const double nd = static_cast<double>(n);
    return cfg.kappa * std::sqrt(std::log(nd) / nd) / weight(u, cfg.delta);
}

Complex ecf(const SplitSample& sample, double u) {
    sample.validate();
    double re = 0.0, im = 0.0;
    for (double z : sample.ecfHalf) {
        re += std::cos(u * z);
        im += std::sin(u * z);
    }
    const double n = static_cast<double>(sample.n());
    return Complex(re / n, im / n);
}

Complex ecf_deriv(const SplitSample& sample, double u) {
    sample.validate();
    double re = 0.0, im = 0.0;
    for (double z : sample.derivHalf) {
        // i z e^{iuz} = z (-sin(uz) + i cos(uz))
        re -= z * std::sin(u * z);
        im += z * std::cos(u * z);
    }
    const double n = static_cast<double>(sample.n());
    return Complex(re / n, im / n);
}

Complex neumann_inverse_value(Complex phiHat, std::size_t n, double deltaStep) {
    const double threshold = 1.0 / std::sqrt(deltaStep * static_cast<double>(n));
    if (std::abs(phiHat) >= threshold) return 1.0 / phiHat;
    return Complex(0.0, 0.0);
}

Complex log_truncated_value(Complex phiHat, double u, std::size_t n,
                            const TruncationConfig& cfg) {
    const double floor = truncation_floor(n, u, cfg);
    if (std::abs(phiHat) >= floor) return phiHat;
    return Complex(floor, 0.0);
}

Complex neumann_inverse(const SplitSample& sample, double u) {
    return neumann_inverse_value(ecf(sample, u), sample.n(), sample.delta);
}

Complex log_truncated_cf(const SplitSample& sample, double u, const TruncationConfig& cfg) {
    return log_truncated_value(ecf(sample, u), u, sample.n(), cfg);
}

namespace {

// Accumulates sum_z c(z) e^{i j step z} for j = 0..half into (accRe, accIm),
// with per-increment coefficients cRe(z), cIm(z) of the form c = cRe + i cIm.
// The angle j*alpha is split as (t*block + r)*alpha and both factors are
// evaluated by direct sincos calls, so there is no error-accumulating
// recurrence: each node costs one complex multiply, and only O(sqrt(half))
// transcendental calls are made per increment.
struct GridAccumulator {
    int half;
    int block;
    int outerCount;
    std::vector<double> accRe, accIm;
    std::vector<double> innRe, innIm, outRe, outIm;

    explicit GridAccumulator(int halfPoints)
        : half(halfPoints),
          block(std::max(1, static_cast<int>(std::lround(std::sqrt(halfPoints + 1.0))))),
          outerCount(halfPoints / block + 1),
          accRe(halfPoints + 1, 0.0),
          accIm(halfPoints + 1, 0.0),
          innRe(block),
          innIm(block),
          outRe(outerCount),
          outIm(outerCount) {}

    void add(double alpha, double cRe, double cIm) {
        for (int r = 0; r < block; ++r) {
            innRe[r] = std::cos(r * alpha);
            innIm[r] = std::sin(r * alpha);
        }
        const double blockAlpha = block * alpha;
        for (int t = 0; t < outerCount; ++t) {
            // Fold the coefficient into the outer factor once per block.
            const double c = std::cos(t * blockAlpha), s = std::sin(t * blockAlpha);
            outRe[t] = cRe * c - cIm * s;
            outIm[t] = cRe * s + cIm * c;
        }
        for (int t = 0; t < outerCount; ++t) {
            const int base = t * block;
            const int count = std::min(block, half + 1 - base);
            const double oR = outRe[t], oI = outIm[t];
            double* __restrict aR = accRe.data() + base;
            double* __restrict aI = accIm.data() + base;
            const double* __restrict iR = innRe.data();
            const double* __restrict iI = innIm.data();
            for (int r = 0; r < count; ++r) {
                aR[r] += oR * iR[r] - oI * iI[r];
                aI[r] += oR * iI[r] + oI * iR[r];
            }
        }
    }
};

} // namespace

GridEcf ecf_grid(const SplitSample& sample, const FrequencyGrid& grid, bool withDeriv) {
    sample.validate();
    if (grid.half < 1 || !(grid.step > 0.0))
        throw std::invalid_argument("ecf_grid: grid must be symmetric with positive step");

    GridEcf out;
    out.grid = grid;
    out.n = sample.n();
    out.delta = sample.delta;
    out.phi.assign(grid.point_count(), Complex(0.0, 0.0));
    out.phiDeriv.assign(grid.point_count(), Complex(0.0, 0.0));

    const double invN = 1.0 / static_cast<double>(sample.n());
    const int c = grid.center();

    {
        GridAccumulator acc(grid.half);
        for (double z : sample.ecfHalf) acc.add(grid.step * z, 1.0, 0.0);
        for (int j = 0; j <= grid.half; ++j) {
            const Complex v(acc.accRe[j] * invN, acc.accIm[j] * invN);
            out.phi[c + j] = v;
            out.phi[c - j] = std::conj(v); // phiHat(-u) = conj(phiHat(u))
        }
    }
    if (withDeriv) {
        GridAccumulator acc(grid.half);
        // i z e^{iuz}: coefficient i z folded into the outer factor.
        for (double z : sample.derivHalf) acc.add(grid.step * z, 0.0, z);
        for (int j = 0; j <= grid.half; ++j) {
            const Complex v(acc.accRe[j] * invN, acc.accIm[j] * invN);
            out.phiDeriv[c + j] = v;
            out.phiDeriv[c - j] = -std::conj(v); // phiHat'(-u) = -conj(phiHat'(u))
        }
    }
    return out;
}

double uniform_deviation_stat(const SplitSample& sample, const LevyModel& model,
                              const FrequencyGrid& grid, double weightDelta) {
    const GridEcf g = ecf_grid(sample, grid, /*withDeriv=*/false);
    double stat = 0.0;
    for (int j = 0; j <= grid.half; ++j) {
        const double u = grid.step * j;
        const double dev = std::abs(g.phi[grid.center() + j] - char_fn(model, u));
        // The deviation is Hermitian-symmetric, so the negative side adds
        // nothing: |phiHat(-u) - phi(-u)| = |conj(phiHat(u) - phi(u))|.
        stat = std::max(stat, weight(u, weightDelta) * dev);
    }
    return stat;
}

} // namespace levyest
