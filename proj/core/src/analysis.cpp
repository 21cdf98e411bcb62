#include "goodwin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "goodwin/errors.hpp"
#include "goodwin/numerics.hpp"

namespace goodwin {

double inverse_rate_integral(const KineticFunction& f, double x) {
    if (!(x > 0.0)) throw DomainError("inverse_rate_integral: x must be > 0");
    if (f.inf_value() < 0.0 || !f.strictly_increasing()) {
        throw DomainError("inverse_rate_integral: " + f.describe() +
                          " is not positive and increasing on (0, inf)");
    }
    const auto& v = f.variant();
    if (const auto* lin = std::get_if<Linear>(&v)) {
        return std::log(x) / lin->slope;
    }
    if (std::holds_alternative<Identity>(v)) {
        return std::log(x);
    }
    if (const auto* mm = std::get_if<MichaelisMenten>(&v)) {
        return (mm->K * std::log(x) + x - 1.0) / mm->vmax;
    }
    if (const auto* aff = std::get_if<Affine>(&v)) {
        if (aff->offset == 0.0) return std::log(x) / aff->slope;
        return (std::log(aff->slope * x + aff->offset) - std::log(aff->slope + aff->offset)) /
               aff->slope;
    }
    return adaptive_simpson([&f](double s) { return 1.0 / f.value(s); }, 1.0, x, 1e-9);
}

std::vector<double> ultimate_bounds(const CfsModel& m, double input_bound) {
    if (!(input_bound >= 0.0)) throw DomainError("ultimate_bounds: input bound must be >= 0");
    const double total = input_bound + m.feedback_magnitude();
    const int dim = m.state_dim();
    std::vector<double> bounds(static_cast<std::size_t>(dim));
    double carry = total;  // limsup of the input seen by the current block
    for (int i = 0; i < dim; ++i) {
        const KineticFunction& loss = m.block(i).loss;
        try {
            bounds[static_cast<std::size_t>(i)] = loss.inverse(carry);
        } catch (const RangeError&) {
            throw BoundUndefinedError(
                "ultimate bound undefined at block " + std::to_string(i + 1) + ": input bound " +
                    std::to_string(carry) + " is not below sup " + loss.describe() + " = " +
                    std::to_string(loss.sup_value()),
                i + 1, carry, loss.sup_value());
        }
        if (i + 1 < dim) {
            carry = m.block(i).output.value(bounds[static_cast<std::size_t>(i)]);
        }
    }
    return bounds;
}

namespace {

// Maximum of fn over [0, hi]: 10^4-point grid, then golden-section refinement
// around the best interior sample. Monotone profiles take the endpoint
// directly. Any non-finite sample makes the maximum +infinity.
double maximize_on(const std::function<double(double)>& fn, double hi) {
    constexpr int kGrid = 10000;
    if (!(hi > 0.0)) return fn(0.0);
    std::vector<double> vals(kGrid + 1);
    int best = 0;
    bool nondecreasing = true;
    bool nonincreasing = true;
    for (int i = 0; i <= kGrid; ++i) {
        const double x = hi * static_cast<double>(i) / kGrid;
        vals[static_cast<std::size_t>(i)] = fn(x);
        if (!std::isfinite(vals[static_cast<std::size_t>(i)])) return kInfinite;
        if (i > 0) {
            const double d = vals[static_cast<std::size_t>(i)] - vals[static_cast<std::size_t>(i - 1)];
            if (d < 0.0) nondecreasing = false;
            if (d > 0.0) nonincreasing = false;
        }
        if (vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(best)]) best = i;
    }
    if (nondecreasing) return vals.back();
    if (nonincreasing) return vals.front();
    const double lo_bracket = hi * static_cast<double>(std::max(0, best - 1)) / kGrid;
    const double hi_bracket = hi * static_cast<double>(std::min(kGrid, best + 1)) / kGrid;
    const double x_star = golden_section_max(fn, lo_bracket, hi_bracket,
                                             std::max(1e-14, (hi_bracket - lo_bracket) * 1e-8));
    return std::max(vals[static_cast<std::size_t>(best)], fn(x_star));
}

}  // namespace

std::vector<double> secant_gains(const CfsModel& m, std::span<const double> state_bounds,
                                 double inflation) {
    const int dim = m.state_dim();
    if (static_cast<int>(state_bounds.size()) != dim) {
        throw AnalysisError("secant_gains: expected one state bound per dynamic block");
    }
    if (!(inflation >= 0.0)) throw AnalysisError("secant_gains: inflation must be >= 0");
    for (double b : state_bounds) {
        if (!(b > 0.0) || !std::isfinite(b)) {
            throw AnalysisError("secant_gains: state bounds must be positive and finite");
        }
    }

    std::vector<double> gains(static_cast<std::size_t>(dim) + 1);
    for (int i = 0; i < dim; ++i) {
        const KineticFunction& f = m.block(i).loss;
        const KineticFunction& g = m.block(i).output;
        const double hi = state_bounds[static_cast<std::size_t>(i)] + inflation;
        gains[static_cast<std::size_t>(i)] =
            maximize_on([&](double x) { return g.derivative(x) / f.derivative(x); }, hi);
    }
    const double y_hi =
        m.block(dim - 1).output.value(state_bounds[static_cast<std::size_t>(dim - 1)] + inflation);
    const KineticFunction& fb = m.feedback();
    gains[static_cast<std::size_t>(dim)] =
        maximize_on([&](double y) { return fb.derivative(y); }, y_hi);
    return gains;
}

double iofp_gain(std::span<const double> gains, bool with_secant_factor) {
    const int n = static_cast<int>(gains.size());
    if (n < 2) throw AnalysisError("iofp_gain: need at least two block gains");
    const double lead = gains[0];
    if (!(lead > 0.0)) throw AnalysisError("iofp_gain: leading gain must be positive or infinite");
    double product = 1.0;
    for (int i = 1; i < n; ++i) {
        const double g = gains[static_cast<std::size_t>(i)];
        if (!std::isfinite(g) || !(g > 0.0)) {
            throw InfiniteGainError("iofp_gain: gain of block " + std::to_string(i + 1) +
                                        " is not finite and positive; the chain gain is undefined",
                                    i + 1);
        }
        product *= g;
    }
    if (with_secant_factor) {
        product *= std::pow(std::cos(std::numbers::pi / n), n);
    }
    const double lead_term = std::isinf(lead) ? 0.0 : -1.0 / lead;
    return lead_term + product;
}

ThresholdResult min_coupling_gain(double k, double lambda2, double graph_norm,
                                  double output_bound, const KineticFunction& g0) {
    if (!std::isfinite(k)) throw AnalysisError("min_coupling_gain: chain gain must be finite");
    if (!(lambda2 > 0.0)) throw AnalysisError("min_coupling_gain: lambda2 must be > 0");
    if (!(output_bound > 0.0)) throw AnalysisError("min_coupling_gain: output bound must be > 0");
    if (!(graph_norm > 0.0)) throw AnalysisError("min_coupling_gain: graph norm must be > 0");

    if (k <= 0.0) return {0.0, 0.0, k, true};

    const auto lhs = [&](double c) {
        return c * derivative_infimum_symmetric(g0, c * graph_norm * output_bound) * lambda2;
    };

    // Log sweep over [1e-6, 1e9]; the LHS rises like c^rho and then decays,
    // so the first grid point above k brackets the ascending crossing.
    constexpr int kPerDecade = 100;
    constexpr double kLogLo = -6.0, kLogHi = 9.0;
    const int points = static_cast<int>((kLogHi - kLogLo) * kPerDecade) + 1;
    double prev = 0.0;
    double best_lhs = 0.0;
    for (int i = 0; i < points; ++i) {
        const double c = std::pow(10.0, kLogLo + (kLogHi - kLogLo) * i / (points - 1));
        const double value = lhs(c);
        if (value > k) {
            double lo = prev, hi = c;
            while (hi - lo > 1e-12 * hi) {
                const double mid = 0.5 * (lo + hi);
                (lhs(mid) > k ? hi : lo) = mid;
            }
            return {hi, lhs(hi), k, true};
        }
        best_lhs = std::max(best_lhs, value);
        prev = c;
    }
    return {kInfinite, best_lhs, k, false};
}

double incremental_passivity_violation(const KineticFunction& g, const BlockTrajectory& a,
                                       const BlockTrajectory& b, double feedback_gain,
                                       Interval box) {
    const std::size_t n = a.times.size();
    if (n < 3 || b.times.size() != n) {
        throw AnalysisError("passivity check: trajectories must share a grid of >= 3 samples");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(a.times[k] - b.times[k]) > 1e-12) {
            throw AnalysisError("passivity check: time grids differ");
        }
        if (!box.contains(a.states[k]) || !box.contains(b.states[k])) {
            throw AnalysisError("passivity check: a trajectory leaves the declared interval");
        }
    }
    const double slope_floor = min_derivative_on(g, box.lo, box.hi);
    if (!(slope_floor > 0.0) || !std::isfinite(slope_floor)) {
        throw AnalysisError("passivity check: output map needs a positive finite slope floor");
    }

    // Quadratic incremental storage S(dx) = (e/2) dx^2 with e = inf g'.
    std::vector<double> storage(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = a.states[k] - b.states[k];
        storage[k] = 0.5 * slope_floor * dx * dx;
    }
    double worst = -kInfinite;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double sdot = (storage[k + 1] - storage[k - 1]) / (a.times[k + 1] - a.times[k - 1]);
        const double du = a.inputs[k] - b.inputs[k];
        const double dy = a.outputs[k] - b.outputs[k];
        worst = std::max(worst, sdot - du * dy + feedback_gain * dy * dy);
    }
    return worst;
}

bool static_block_check(const KineticFunction& g, Interval interval, double gamma,
                        std::uint64_t seed, int pairs) {
    if (!interval.bounded()) throw DomainError("static_block_check: interval must be bounded");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(interval.lo, interval.hi);
    for (int i = 0; i < pairs; ++i) {
        double u1 = dist(rng);
        double u2 = dist(rng);
        if (u1 == u2) continue;
        if (u1 < u2) std::swap(u1, u2);
        const double dg = g.value(u1) - g.value(u2);
        const double slack = 1e-12 * std::max(1.0, std::abs(gamma * (u1 - u2)));
        if (dg < -slack || dg > gamma * (u1 - u2) + slack) return false;
    }
    return true;
}

}  // namespace goodwin
