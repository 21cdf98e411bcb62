#include "goodwin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace goodwin {

double exact_sum(std::span<const double> values) {
    // Shewchuk's growing expansion of exact partials, rounded once at the end
    // (same scheme as Python's math.fsum, including the half-even correction).
    std::vector<double> partials;
    partials.reserve(8);
    for (double x : values) {
        std::size_t kept = 0;
        for (std::size_t j = 0; j < partials.size(); ++j) {
            double y = partials[j];
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials[kept++] = lo;
            x = hi;
        }
        partials.resize(kept);
        partials.push_back(x);
    }

    double hi = 0.0;
    std::size_t n = partials.size();
    if (n > 0) {
        hi = partials[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) hi = x;
        }
    }
    return hi;
}

double exact_dot(std::span<const double> a, std::span<const double> b) {
    std::vector<double> products(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) products[i] = a[i] * b[i];
    return exact_sum(products);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    const double tol = std::max(rel_tol * std::abs(whole), 1e-300);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > x_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double quadratic_peak(double t0, double t1, double t2, double v0, double v1, double v2) {
    // Lagrange parabola through the three samples; vertex where derivative = 0.
    const double d01 = t0 - t1, d02 = t0 - t2, d12 = t1 - t2;
    const double a = v0 / (d01 * d02) - v1 / (d01 * d12) + v2 / (d02 * d12);
    if (a == 0.0 || !std::isfinite(a)) return t1;
    const double bcoef =
        -v0 * (t1 + t2) / (d01 * d02) + v1 * (t0 + t2) / (d01 * d12) - v2 * (t0 + t1) / (d02 * d12);
    const double vertex = -bcoef / (2.0 * a);
    // Keep the refinement inside the sample triple.
    if (vertex < std::min(t0, t2) || vertex > std::max(t0, t2)) return t1;
    return vertex;
}

}  // namespace goodwin
