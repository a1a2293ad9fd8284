// SPDX-License-Identifier: MIT
//
// Uniform symmetric frequency grids, deterministic (pairwise) summation and
// small quadrature helpers shared by the estimator and selection modules.

#ifndef LEVYEST_QUADRATURE_HPP
#define LEVYEST_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace levyest {

/// Uniform grid u_j = (j - half) * step for j = 0..2*half, i.e. a symmetric
/// grid over [-half*step, half*step] that always contains the origin.
/// `half` equals the number of trapezoid panels per side; the total panel
/// count 2*half is what QuadratureSpec::nodes refers to.
struct FrequencyGrid {
    double step = 0.0;
    int half = 0;

    int point_count() const { return 2 * half + 1; }
    int panels() const { return 2 * half; }
    double extent() const { return half * step; }
    /// Node value for storage index idx in [0, 2*half].
    double node(int idx) const { return (idx - half) * step; }
    /// Storage index of the origin.
    int center() const { return half; }
    /// Trapezoid weight of storage index idx (step, halved at the ends).
    double trap_weight(int idx) const {
        return (idx == 0 || idx == 2 * half) ? 0.5 * step : step;
    }
};

/// Build a symmetric grid over [-extent, extent] with `panels` uniform
/// trapezoid panels (panels must be even and >= 2).
FrequencyGrid make_band_grid(double extent, int panels);

/// Deterministic pairwise (tree) reduction. Summation order depends only on
/// the element order, never on thread count, and has O(log n) error growth.
template <typename T>
T pairwise_sum(const T* data, std::size_t count) {
    if (count == 0) return T{};
    if (count <= 8) {
        T acc = data[0];
        for (std::size_t i = 1; i < count; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

/// Adaptive composite Simpson on [a, b] to relative tolerance `relTol`.
/// Throws std::runtime_error if `maxDepth` recursion does not converge.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double relTol = 1e-10, int maxDepth = 48);

/// Gauss-Legendre nodes/weights on [-1, 1]; computed once per order and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

/// Least-squares line fit y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slopeStdErr = 0.0;
    int points = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace levyest

#endif // LEVYEST_QUADRATURE_HPP
