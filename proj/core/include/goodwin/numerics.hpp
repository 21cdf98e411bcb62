#pragma once

#include <functional>
#include <span>

namespace goodwin {

/// Correctly rounded sum of a sequence of doubles (Shewchuk expansion).
/// The result depends only on the multiset of inputs, not their order, which
/// keeps network computations exactly equivariant under relabeling.
double exact_sum(std::span<const double> values);

/// Correctly rounded dot product built on exact_sum. The elementwise products
/// are rounded once each, so the result is still order-independent.
double exact_dot(std::span<const double> a, std::span<const double> b);

/// Adaptive Simpson quadrature of f over [a, b] to the given relative
/// tolerance (with a small absolute floor for integrals near zero).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-9);

/// Argmax of a unimodal f on [lo, hi] by golden-section search.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol);

/// Vertex abscissa of the parabola through (t0,v0), (t1,v1), (t2,v2).
/// Falls back to t1 when the three points are collinear.
double quadratic_peak(double t0, double t1, double t2, double v0, double v1, double v2);

}  // namespace goodwin
