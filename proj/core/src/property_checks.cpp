#include "goodwin/property_checks.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "goodwin/analysis.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/graph.hpp"
#include "goodwin/netsim.hpp"
#include "goodwin/scenario.hpp"

namespace goodwin {

namespace {

std::vector<KineticFunction> sample_variants() {
    return {KineticFunction(Linear{0.7}),
            KineticFunction(Identity{}),
            KineticFunction(MichaelisMenten{0.35, 1.0}),
            KineticFunction(HillInhibition{0.7, 1.0, 4.0}),
            KineticFunction(SaturatingCoupling{0.0005, 0.9}),
            KineticFunction(Affine{2.0, 0.25})};
}

double sample_point(const KineticFunction& f, std::mt19937_64& rng) {
    const bool whole_line = !std::isfinite(f.domain().lo) || f.domain().lo < 0.0;
    std::uniform_real_distribution<double> dist(whole_line ? -5.0 : 0.01, 5.0);
    return dist(rng);
}

CheckResult check_monotone(const CheckOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    for (const auto& f : sample_variants()) {
        if (!f.strictly_increasing()) continue;
        for (int i = 0; i < 200; ++i) {
            double a = sample_point(f, rng);
            double b = sample_point(f, rng);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (!(f.value(b) > f.value(a))) {
                return {false, f.describe() + " not increasing between " + std::to_string(a) +
                                   " and " + std::to_string(b)};
            }
        }
    }
    return {true, "strict monotonicity on 200 random pairs per variant"};
}

CheckResult check_inverse_roundtrip(const CheckOptions& opts) {
    std::mt19937_64 rng(opts.seed + 1);
    for (const auto& f : sample_variants()) {
        if (!f.strictly_increasing()) continue;
        for (int i = 0; i < 200; ++i) {
            const double x = sample_point(f, rng);
            const double back = f.inverse(f.value(x));
            if (std::abs(back - x) > 1e-10 * std::max(1.0, std::abs(x))) {
                return {false, f.describe() + " roundtrip drift " + std::to_string(back - x) +
                                   " at x = " + std::to_string(x)};
            }
        }
    }
    return {true, "inverse(value(x)) = x to 1e-10 relative"};
}

CheckResult check_derivative_fd(const CheckOptions& opts) {
    std::mt19937_64 rng(opts.seed + 2);
    const double h = 1e-6;
    for (const auto& f : sample_variants()) {
        for (int i = 0; i < 100; ++i) {
            double x = sample_point(f, rng);
            if (std::abs(x) < 0.05) continue;  // keep clear of the singular origin
            const double fd = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
            const double exact = f.derivative(x);
            const double tol = std::max(1e-6, 1e-5 * std::abs(exact));
            if (std::abs(fd - exact) > tol) {
                return {false, f.describe() + " derivative mismatch at x = " + std::to_string(x)};
            }
        }
    }
    return {true, "analytic derivatives match central differences"};
}

CheckResult check_laplacian(const CheckOptions& opts) {
    std::mt19937_64 rng(opts.seed + 3);
    std::uniform_real_distribution<double> weight(0.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Matrix w(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (j != k) w(j, k) = weight(rng);
        const Matrix l = laplacian(CouplingGraph::from_weights(w));
        for (int j = 0; j < n; ++j) {
            double row = 0.0;
            for (int k = 0; k < n; ++k) row += l(j, k);
            if (std::abs(row) > 1e-12) {
                return {false, "row sum " + std::to_string(row) + " at row " + std::to_string(j)};
            }
        }
    }
    const double l2 = lambda2(CouplingGraph::complete(10, 1.0));
    if (std::abs(l2 - 10.0) > 1e-9) {
        return {false, "complete-graph lambda2 = " + std::to_string(l2) + ", expected 10"};
    }
    return {true, "Laplacian rows sum to zero; complete-graph lambda2 = N"};
}

CheckResult check_positivity_gonze(const CheckOptions& opts) {
    SimConfig sim;
    sim.t_end = 50.0;
    sim.dt = opts.dt;
    sim.record_stride = 10;
    sim.seed = opts.seed + 4;
    sim.initial.ranges = {Interval{0.5, 1.5}};
    try {
        const Trajectory traj = simulate(gonze_model(), Protocol::saturated(10.0, 0.0005, 0.9),
                                         CouplingGraph::complete(3, 1.0), sim);
        for (double v : traj.states) {
            if (!(v > 0.0)) return {false, "recorded state " + std::to_string(v) + " <= 0"};
        }
    } catch (const SimulationError& e) {
        return {false, e.what()};
    }
    return {true, "circadian network stays in the positive orthant"};
}

CheckResult check_positivity_fast_chain(const CheckOptions& opts) {
    // Fast loss rates: stable and positive at dt = 0.01, but a coarse step
    // (dt = 1) makes the Runge-Kutta update matrix lose positivity.
    std::vector<DynamicBlock> blocks;
    blocks.push_back({KineticFunction(Linear{8.0}), KineticFunction(Linear{6.0})});
    blocks.push_back({KineticFunction(Linear{8.0}), KineticFunction(Linear{6.0})});
    blocks.push_back({KineticFunction(Linear{8.0}), KineticFunction(Identity{})});
    const CfsModel chain(std::move(blocks), KineticFunction(HillInhibition{0.5, 1.0, 2.0}));

    SimConfig sim;
    sim.t_end = 20.0;
    sim.dt = opts.dt;
    sim.record_stride = 10;
    sim.seed = opts.seed + 5;
    sim.initial.ranges = {Interval{0.5, 1.5}};
    try {
        const Trajectory traj =
            simulate(chain, Protocol::none(), CouplingGraph::complete(2, 1.0), sim);
        for (double v : traj.states) {
            if (!(v > 0.0)) return {false, "recorded state " + std::to_string(v) + " <= 0"};
        }
    } catch (const SimulationError& e) {
        return {false, e.what()};
    }
    return {true, "fast chain stays positive at dt = " + std::to_string(opts.dt)};
}

CheckResult check_saturated_inputs(const CheckOptions& opts) {
    SimConfig sim;
    sim.t_end = 30.0;
    sim.dt = 0.01;
    sim.record_stride = 5;
    sim.seed = opts.seed + 6;
    sim.initial.ranges = {Interval{0.5, 1.5}};
    const double M0 = 0.0005;
    const Trajectory traj = simulate(gonze_model(), Protocol::saturated(50.0, M0, 0.9),
                                     CouplingGraph::complete(3, 1.0), sim);
    for (double u : traj.inputs) {
        if (!(u > 0.0 && u < M0)) {
            return {false, "input " + std::to_string(u) + " escaped (0, M0)"};
        }
    }
    return {true, "all recorded inputs inside (0, M0)"};
}

// Smooth random input confined to [0, umax]: mean level plus two sinusoids.
std::function<double(double)> smooth_input(double umax, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 6.28318530717958648);
    std::uniform_real_distribution<double> freq(0.1, 1.0);
    const double w1 = freq(rng), w2 = freq(rng), p1 = phase(rng), p2 = phase(rng);
    return [=](double t) {
        return umax * (0.5 + 0.25 * std::sin(w1 * t + p1) + 0.25 * std::sin(w2 * t + p2));
    };
}

CheckResult check_iosp_block(const KineticFunction& f, const KineticFunction& g,
                             double feedback_gain, Interval box, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double umax = 0.99 * f.value(box.hi);
    std::uniform_real_distribution<double> x0(0.1 * box.hi, 0.9 * box.hi);
    const auto a = simulate_block(f, g, x0(rng), smooth_input(umax, rng), 0.01, 40.0);
    const auto b = simulate_block(f, g, x0(rng), smooth_input(umax, rng), 0.01, 40.0);
    const double violation = incremental_passivity_violation(g, a, b, feedback_gain, box);
    if (violation > 1e-4) {
        return {false, "dissipation violation " + std::to_string(violation)};
    }
    return {true, "max dissipation violation " + std::to_string(violation)};
}

CheckResult check_iosp_linear(const CheckOptions& opts) {
    return check_iosp_block(KineticFunction(Linear{1.0}), KineticFunction(Identity{}), 1.0,
                            Interval{0.0, 2.0}, opts.seed + 7);
}

CheckResult check_iosp_mm(const CheckOptions& opts) {
    // gamma = max g'/f' on [0, 2] is 18 for this block; pass 1/gamma.
    return check_iosp_block(KineticFunction(MichaelisMenten{0.35, 1.0}),
                            KineticFunction(Linear{0.7}), 1.0 / 18.0, Interval{0.0, 2.0},
                            opts.seed + 8);
}

CheckResult check_static_block(const CheckOptions& opts) {
    const KineticFunction hill(HillInhibition{0.7, 1.0, 4.0});
    const double gamma = max_derivative_on(hill, 0.0, 2.0);
    if (!static_block_check(hill, Interval{0.0, 2.0}, gamma, opts.seed + 9)) {
        return {false, "hill feedback violated its Lipschitz gain"};
    }
    if (!static_block_check(KineticFunction(Identity{}), Interval{0.0, 2.0}, 1.0, opts.seed + 10)) {
        return {false, "identity should satisfy gain 1"};
    }
    if (static_block_check(KineticFunction(Identity{}), Interval{0.0, 2.0}, 0.5, opts.seed + 11)) {
        return {false, "identity must violate gain 0.5"};
    }
    return {true, "static blocks match their Lipschitz gains"};
}

CheckResult check_ultimate_bound(const CheckOptions& opts) {
    const CfsModel chain = model_preset("linear-goodwin");
    const double M0 = 0.3;
    const auto bounds = ultimate_bounds(chain, M0);
    std::mt19937_64 rng(opts.seed + 12);
    std::uniform_real_distribution<double> x0(0.1, 3.0);
    SimConfig sim;
    sim.t_end = 300.0;
    sim.dt = 0.01;
    sim.record_stride = 10;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> init(static_cast<std::size_t>(chain.state_dim()));
        for (double& v : init) v = x0(rng);
        const auto input = smooth_input(M0, rng);
        const Trajectory traj = simulate_oscillator(chain, input, init, sim);
        for (int k = 0; k < traj.samples(); ++k) {
            if (traj.times[static_cast<std::size_t>(k)] < 0.9 * sim.t_end) continue;
            for (int i = 0; i < chain.state_dim(); ++i) {
                const double ceiling = bounds[static_cast<std::size_t>(i)] * 1.01;
                if (traj.state(k, 0, i) > ceiling) {
                    return {false, "state " + std::to_string(i + 1) + " = " +
                                       std::to_string(traj.state(k, 0, i)) + " above ceiling " +
                                       std::to_string(ceiling)};
                }
            }
        }
    }
    return {true, "tail states stay below the ultimate bounds"};
}

}  // namespace

const std::vector<PropertyCheck>& builtin_checks() {
    static const std::vector<PropertyCheck> checks = {
        {"kinetics-monotone", "every kinetic variant is strictly increasing", check_monotone},
        {"kinetics-inverse-roundtrip", "partial inverses undo evaluation", check_inverse_roundtrip},
        {"kinetics-derivative-fd", "analytic derivatives match finite differences",
         check_derivative_fd},
        {"graph-laplacian", "Laplacian rows sum to zero; complete-graph lambda2 = N",
         check_laplacian},
        {"positivity-gonze", "coupled circadian network stays positive", check_positivity_gonze},
        {"positivity-fast-chain", "fast linear chain stays positive (step-size sensitive)",
         check_positivity_fast_chain},
        {"saturated-input-range", "saturated protocol keeps inputs inside (0, M0)",
         check_saturated_inputs},
        {"iosp-linear-block", "linear block satisfies its dissipation inequality",
         check_iosp_linear},
        {"iosp-mm-block", "Michaelis-Menten block satisfies its dissipation inequality",
         check_iosp_mm},
        {"static-block-gain", "static blocks are nondecreasing and Lipschitz",
         check_static_block},
        {"ultimate-bound-limsup", "simulated tails respect the bound recursion",
         check_ultimate_bound},
    };
    return checks;
}

}  // namespace goodwin
