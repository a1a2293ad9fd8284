// SPDX-License-Identifier: MIT

#include "levyest/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace levyest {

FrequencyGrid make_band_grid(double extent, int panels) {
    if (!(extent > 0.0))
        throw std::invalid_argument("make_band_grid: extent must be positive");
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("make_band_grid: panel count must be even and >= 2");
    FrequencyGrid grid;
    grid.half = panels / 2;
    grid.step = extent / grid.half;
    return grid;
}

namespace {

double simpson_rule(double fa, double fm, double fb, double width) {
    return width * (fa + 4.0 * fm + fb) / 6.0;
}

double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double tol,
                       int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_rule(fa, flm, fm, m - a);
    const double right = simpson_rule(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw std::runtime_error("adaptive_simpson: did not converge within depth limit");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double relTol, int maxDepth) {
    if (a == b) return 0.0;
    const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    const double whole = simpson_rule(fa, fm, fb, b - a);
    // Tolerance reference: a coarse trapezoid scan of |f| (three points can
    // miss a peak entirely on a wide window), floored to keep near-zero
    // integrals from demanding impossible precision.
    constexpr int kScanPanels = 64;
    const double h = (b - a) / kScanPanels;
    double scan = 0.0, prev = std::abs(fa);
    for (int i = 1; i <= kScanPanels; ++i) {
        const double cur = std::abs(f(a + i * h));
        scan += 0.5 * (prev + cur);
        prev = cur;
    }
    scan *= std::abs(h);
    const double tol = relTol * std::max({std::abs(whole), scan, 1e-12});
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, maxDepth);
}

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1)
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendre table;
    table.nodes.resize(order);
    table.weights.resize(order);
    // Newton iteration on P_order from the Chebyshev-based initial guess.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double deriv = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double deriv = order * (x * p1 - p0) / (x * x - 1.0);
        table.nodes[i] = -x;
        table.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        table.weights[i] = w;
        table.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) table.nodes[order / 2] = 0.0;
    return cache.emplace(order, std::move(table)).first->second;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("fit_line: mismatched coordinate lengths");
    const std::size_t n = x.size();
    if (n < 2)
        throw std::invalid_argument("fit_line: need at least two points");

    double meanX = 0.0, meanY = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        meanX += x[i];
        meanY += y[i];
    }
    meanX /= static_cast<double>(n);
    meanY /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - meanX) * (x[i] - meanX);
        sxy += (x[i] - meanX) * (y[i] - meanY);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_line: degenerate abscissa (all x equal)");

    LineFit fit;
    fit.points = static_cast<int>(n);
    fit.slope = sxy / sxx;
    fit.intercept = meanY - fit.slope * meanX;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.slopeStdErr = std::sqrt(rss / (static_cast<double>(n) - 2.0) / sxx);
    }
    return fit;
}

} // namespace levyest
