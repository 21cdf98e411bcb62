#include "goodwin/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "goodwin/errors.hpp"

namespace goodwin {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

void require_param(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid kinetic parameter: " + what);
}

}  // namespace

KineticFunction::KineticFunction(Variant v) : variant_(std::move(v)) {
    std::visit(
        [](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Linear>) {
                require_param(k.slope > 0.0, fmt("linear slope %g must be > 0", k.slope));
            } else if constexpr (std::is_same_v<T, MichaelisMenten>) {
                require_param(k.vmax > 0.0, fmt("michaelis_menten vmax %g must be > 0", k.vmax));
                require_param(k.K > 0.0, fmt("michaelis_menten K %g must be > 0", k.K));
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                require_param(k.v1 >= 0.0, fmt("hill_inhibition v1 %g must be >= 0", k.v1));
                require_param(k.K1 > 0.0, fmt("hill_inhibition K1 %g must be > 0", k.K1));
                require_param(k.p >= 1.0, fmt("hill_inhibition exponent %g must be >= 1", k.p));
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                require_param(k.M0 > 0.0, fmt("saturating_coupling M0 %g must be > 0", k.M0));
                require_param(k.rho > 0.0 && k.rho < 1.0,
                              fmt("saturating_coupling rho %g must be in (0, 1)", k.rho));
            } else if constexpr (std::is_same_v<T, Affine>) {
                require_param(k.slope > 0.0, fmt("affine slope %g must be > 0", k.slope));
            }
        },
        variant_);
}

double KineticFunction::value(double x) const {
    if (!domain().contains(x)) {
        throw DomainError(describe() + fmt(": argument %g outside domain", x));
    }
    return std::visit(
        [x](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Linear>) {
                return k.slope * x;
            } else if constexpr (std::is_same_v<T, Identity>) {
                return x;
            } else if constexpr (std::is_same_v<T, MichaelisMenten>) {
                if (std::isinf(x)) return k.vmax;
                return k.vmax * x / (k.K + x);
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                const double kp = std::pow(k.K1, k.p);
                return -k.v1 * kp / (kp + std::pow(x, k.p));
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                const double m = std::pow(std::abs(x), k.rho);
                const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
                if (std::isinf(m)) return 0.5 * k.M0 * (1.0 + s);
                return 0.5 * k.M0 * (1.0 + s * m / (1.0 + m));
            } else {
                return k.slope * x + k.offset;
            }
        },
        variant_);
}

double KineticFunction::derivative(double x) const {
    if (!domain().contains(x)) {
        throw DomainError(describe() + fmt(": argument %g outside domain", x));
    }
    return std::visit(
        [x](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Linear>) {
                return k.slope;
            } else if constexpr (std::is_same_v<T, Identity>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, MichaelisMenten>) {
                const double d = k.K + x;
                return k.vmax * k.K / (d * d);
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                const double kp = std::pow(k.K1, k.p);
                const double d = kp + std::pow(x, k.p);
                return k.v1 * kp * k.p * std::pow(x, k.p - 1.0) / (d * d);
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                if (x == 0.0) return kInfinite;  // one-sided derivative diverges for rho < 1
                const double a = std::abs(x);
                const double m = std::pow(a, k.rho);
                const double d = 1.0 + m;
                return 0.5 * k.M0 * k.rho * std::pow(a, k.rho - 1.0) / (d * d);
            } else {
                return k.slope;
            }
        },
        variant_);
}

double KineticFunction::inverse(double y) const {
    return std::visit(
        [y, this](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Linear>) {
                if (y < 0.0) throw RangeError(describe() + fmt(": %g below range [0, inf)", y), 0.0,
                                              kInfinite, y);
                return y / k.slope;
            } else if constexpr (std::is_same_v<T, Identity>) {
                if (y < 0.0) throw RangeError(describe() + fmt(": %g below range [0, inf)", y), 0.0,
                                              kInfinite, y);
                return y;
            } else if constexpr (std::is_same_v<T, MichaelisMenten>) {
                if (y < 0.0 || y >= k.vmax) {
                    throw RangeError(describe() + fmt(": %g outside range [0, %g)", y, k.vmax), 0.0,
                                     k.vmax, y);
                }
                return k.K * y / (k.vmax - y);
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                if (k.v1 == 0.0 || y < -k.v1 || y >= 0.0) {
                    throw RangeError(describe() + fmt(": %g outside range [%g, 0)", y, -k.v1),
                                     -k.v1, 0.0, y);
                }
                if (y == -k.v1) return 0.0;
                return k.K1 * std::pow((k.v1 + y) / (-y), 1.0 / k.p);
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                if (y <= 0.0 || y >= k.M0) {
                    throw RangeError(describe() + fmt(": %g outside range (0, %g)", y, k.M0), 0.0,
                                     k.M0, y);
                }
                const double phi = 2.0 * y / k.M0 - 1.0;
                if (phi == 0.0) return 0.0;
                const double w = std::abs(phi) / (1.0 - std::abs(phi));
                const double v = std::pow(w, 1.0 / k.rho);
                return phi > 0.0 ? v : -v;
            } else {
                if (y < k.offset) {
                    throw RangeError(describe() + fmt(": %g below range [%g, inf)", y, k.offset),
                                     k.offset, kInfinite, y);
                }
                return (y - k.offset) / k.slope;
            }
        },
        variant_);
}

double KineticFunction::sup_value() const {
    return std::visit(
        [](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, MichaelisMenten>) {
                return k.vmax;
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                return k.M0;
            } else {
                return kInfinite;
            }
        },
        variant_);
}

double KineticFunction::inf_value() const {
    return std::visit(
        [](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, HillInhibition>) {
                return -k.v1;
            } else if constexpr (std::is_same_v<T, Affine>) {
                return k.offset;
            } else {
                return 0.0;
            }
        },
        variant_);
}

Interval KineticFunction::domain() const {
    if (std::holds_alternative<SaturatingCoupling>(variant_)) {
        return {-kInfinite, kInfinite};
    }
    return {0.0, kInfinite};
}

bool KineticFunction::strictly_increasing() const {
    if (const auto* h = std::get_if<HillInhibition>(&variant_)) return h->v1 > 0.0;
    return true;
}

std::string KineticFunction::describe() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Linear>) {
                return fmt("linear(slope=%g)", k.slope);
            } else if constexpr (std::is_same_v<T, Identity>) {
                return "identity";
            } else if constexpr (std::is_same_v<T, MichaelisMenten>) {
                return fmt("michaelis_menten(vmax=%g, K=%g)", k.vmax, k.K);
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                return fmt("hill_inhibition(v1=%g, K1=%g, p=%g)", k.v1, k.K1, k.p);
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                return fmt("saturating_coupling(M0=%g, rho=%g)", k.M0, k.rho);
            } else {
                return fmt("affine(slope=%g, offset=%g)", k.slope, k.offset);
            }
        },
        variant_);
}

double derivative_infimum_symmetric(const KineticFunction& g0, double s) {
    if (s < 0.0) throw DomainError(fmt("derivative infimum: s = %g must be >= 0", s));
    return std::visit(
        [&]([[maybe_unused]] const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                // Even derivative, strictly decreasing in |v|: infimum sits at the edge.
                return g0.derivative(s);
            } else if constexpr (std::is_same_v<T, Linear> || std::is_same_v<T, Affine> ||
                                 std::is_same_v<T, Identity>) {
                return g0.derivative(0.0);
            } else {
                // No symmetric structure declared: grid minimization over the
                // domain-intersected interval (approximation).
                const double lo = std::max(g0.domain().lo, -s);
                if (s <= lo) return g0.derivative(lo);
                double best = kInfinite;
                const int kGrid = 10000;
                for (int i = 0; i <= kGrid; ++i) {
                    const double x = lo + (s - lo) * static_cast<double>(i) / kGrid;
                    best = std::min(best, g0.derivative(x));
                }
                return best;
            }
        },
        g0.variant());
}

namespace {

// Argmax of the HillInhibition derivative: z* = K1 * ((p-1)/(p+1))^(1/p).
double hill_derivative_peak(const HillInhibition& h) {
    if (h.p <= 1.0) return 0.0;
    return h.K1 * std::pow((h.p - 1.0) / (h.p + 1.0), 1.0 / h.p);
}

}  // namespace

double min_derivative_on(const KineticFunction& f, double lo, double hi) {
    lo = std::max(lo, f.domain().lo);
    if (hi < lo) throw DomainError("min_derivative_on: empty interval");
    return std::visit(
        [&]([[maybe_unused]] const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, MichaelisMenten>) {
                return f.derivative(hi);  // decreasing
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                return std::min(f.derivative(lo), f.derivative(hi));  // unimodal
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                return f.derivative(std::max(std::abs(lo), std::abs(hi)));
            } else {
                return f.derivative(lo);  // constant slope
            }
        },
        f.variant());
}

double max_derivative_on(const KineticFunction& f, double lo, double hi) {
    lo = std::max(lo, f.domain().lo);
    if (hi < lo) throw DomainError("max_derivative_on: empty interval");
    return std::visit(
        [&]([[maybe_unused]] const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, MichaelisMenten>) {
                return f.derivative(lo);  // decreasing
            } else if constexpr (std::is_same_v<T, HillInhibition>) {
                const double peak = hill_derivative_peak(k);
                if (peak >= lo && peak <= hi) return f.derivative(peak);
                return std::max(f.derivative(lo), f.derivative(hi));
            } else if constexpr (std::is_same_v<T, SaturatingCoupling>) {
                if (lo <= 0.0 && hi >= 0.0) return kInfinite;
                return f.derivative(std::min(std::abs(lo), std::abs(hi)));
            } else {
                return f.derivative(lo);
            }
        },
        f.variant());
}

}  // namespace goodwin
