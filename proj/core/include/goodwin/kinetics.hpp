#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>

namespace goodwin {

/// Closed interval [lo, hi]; hi may be +infinity. Used for state boxes.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool bounded() const { return std::isfinite(hi); }
};

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

// Kinetic variants. Concentrations are in nM, rates in nM/h, time in h.

/// x -> slope * x, slope > 0.
struct Linear {
    double slope;
};

/// x -> x.
struct Identity {};

/// x -> vmax * x / (K + x); the saturating rate law of enzymatic reactions.
struct MichaelisMenten {
    double vmax;
    double K;
};

/// z -> -v1 * K1^p / (K1^p + z^p). Strictly increasing from -v1 toward 0;
/// the inhibitory feedback map of a self-repressing chain. v1 = 0 is the
/// degenerate constant-zero map (no production).
struct HillInhibition {
    double v1;
    double K1;
    double p;
};

/// v -> (M0/2) * (1 + sign(v)|v|^rho / (1 + |v|^rho)) with rho in (0, 1).
/// Bounded, strictly increasing on all of R, range (0, M0); the input
/// saturation used by the coupling protocol. Its one-sided derivative at 0
/// diverges for rho < 1 and is reported as +infinity.
struct SaturatingCoupling {
    double M0;
    double rho;
};

/// x -> slope * x + offset, slope > 0.
struct Affine {
    double slope;
    double offset;
};

/// A scalar strictly monotone map with exact derivative, partial inverse and
/// range metadata. Immutable after construction; all operations are pure.
class KineticFunction {
public:
    using Variant =
        std::variant<Linear, Identity, MichaelisMenten, HillInhibition, SaturatingCoupling, Affine>;

    /// Validates parameters (positivity constraints per variant); throws
    /// ConfigError on violation.
    explicit KineticFunction(Variant v);

    KineticFunction(Linear v) : KineticFunction(Variant(v)) {}
    KineticFunction(Identity v) : KineticFunction(Variant(v)) {}
    KineticFunction(MichaelisMenten v) : KineticFunction(Variant(v)) {}
    KineticFunction(HillInhibition v) : KineticFunction(Variant(v)) {}
    KineticFunction(SaturatingCoupling v) : KineticFunction(Variant(v)) {}
    KineticFunction(Affine v) : KineticFunction(Variant(v)) {}

    /// f(x). Throws DomainError for x outside the domain (x < 0 for the
    /// reaction-kinetics variants; SaturatingCoupling accepts any real).
    double value(double x) const;
    double operator()(double x) const { return value(x); }

    /// Exact analytic derivative. Returns +infinity where the one-sided
    /// derivative diverges (SaturatingCoupling at 0 with rho < 1).
    double derivative(double x) const;

    /// Partial inverse: the x with f(x) = y. Closed form for every variant.
    /// Throws RangeError (carrying the range bounds) when y is outside the
    /// attainable range.
    double inverse(double y) const;

    /// Supremum of f over its domain; +infinity for unbounded variants.
    double sup_value() const;

    /// Infimum of f over its domain (e.g. -v1 for HillInhibition, attained
    /// at 0).
    double inf_value() const;

    Interval domain() const;

    /// False only for the degenerate HillInhibition with v1 = 0.
    bool strictly_increasing() const;

    const Variant& variant() const { return variant_; }

    /// Short human-readable form, e.g. "michaelis_menten(vmax=0.35, K=1)".
    std::string describe() const;

private:
    Variant variant_;
};

/// inf of g0' over [-s, s] (the quantity the coupling-strength criterion
/// consumes). Exact for SaturatingCoupling (derivative is even and decreasing
/// in |v|, so the infimum is g0'(s)) and for constant-slope variants; for the
/// remaining variants falls back to a 10^4-point grid minimization over the
/// domain-intersected interval, a documented approximation. s = 0 yields the
/// derivative at 0 (+infinity for SaturatingCoupling with rho < 1).
double derivative_infimum_symmetric(const KineticFunction& g0, double s);

/// Minimum of f' over [lo, hi] (grid + local refinement; exact for variants
/// with monotone derivative).
double min_derivative_on(const KineticFunction& f, double lo, double hi);

/// Maximum of f' over [lo, hi]; +infinity if the derivative diverges inside.
double max_derivative_on(const KineticFunction& f, double lo, double hi);

}  // namespace goodwin
