#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "goodwin/analysis.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/netsim.hpp"
#include "goodwin/scenario.hpp"
#include "oracles.hpp"

using namespace goodwin;

namespace {

CfsModel chain(std::vector<std::pair<KineticFunction, KineticFunction>> fg,
               KineticFunction feedback) {
    std::vector<DynamicBlock> blocks;
    for (auto& [f, g] : fg) blocks.push_back({std::move(f), std::move(g)});
    return CfsModel(std::move(blocks), std::move(feedback));
}

std::function<double(double)> smooth_input(double umax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> freq(0.1, 1.0);
    const double w1 = freq(rng), w2 = freq(rng), p1 = phase(rng), p2 = phase(rng);
    return [=](double t) {
        return umax * (0.5 + 0.25 * std::sin(w1 * t + p1) + 0.25 * std::sin(w2 * t + p2));
    };
}

}  // namespace

TEST_CASE("inverse rate integral") {
    CHECK(inverse_rate_integral(KineticFunction(Linear{1.0}), std::exp(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inverse_rate_integral(KineticFunction(Linear{2.0}), 1.0) == doctest::Approx(0.0));

    const KineticFunction mm(MichaelisMenten{0.35, 1.0});
    const double closed = inverse_rate_integral(mm, 2.0);
    CHECK(closed == doctest::Approx((std::log(2.0) + 1.0) / 0.35).epsilon(1e-12));
    // Independent quadrature oracle.
    const double quad =
        oracles::simpson_integral([&](double s) { return 1.0 / mm.value(s); }, 1.0, 2.0);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));

    CHECK_THROWS_AS(inverse_rate_integral(mm, 0.0), DomainError);
    CHECK_THROWS_AS(inverse_rate_integral(KineticFunction(HillInhibition{1.0, 1.0, 2.0}), 2.0),
                    DomainError);
}

TEST_CASE("ultimate bounds: identity chain") {
    // Three identity stages with unit linear losses and M = 0.5 + 0.1.
    auto m = chain({{KineticFunction(Linear{1.0}), KineticFunction(Identity{})},
                    {KineticFunction(Linear{1.0}), KineticFunction(Identity{})},
                    {KineticFunction(Linear{1.0}), KineticFunction(Identity{})}},
                   KineticFunction(HillInhibition{0.5, 1.0, 2.0}));
    const auto bounds = ultimate_bounds(m, 0.1);
    REQUIRE(bounds.size() == 3);
    for (double b : bounds) CHECK(b == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("ultimate bounds: hand recursion and the simulated ceiling") {
    auto m = chain({{KineticFunction(Linear{2.0}), KineticFunction(Linear{4.0})},
                    {KineticFunction(Linear{1.0}), KineticFunction(Identity{})}},
                   KineticFunction(HillInhibition{1.0, 1.0, 2.0}));
    const auto bounds = ultimate_bounds(m, 0.0);
    REQUIRE(bounds.size() == 2);
    CHECK(bounds[0] == doctest::Approx(0.5));
    CHECK(bounds[1] == doctest::Approx(2.0));

    // Long-horizon oracle: worst-case constant input at the bound.
    SimConfig sim;
    sim.t_end = 60.0;
    sim.dt = 0.01;
    sim.record_stride = 10;
    const std::vector<double> x0{0.9, 1.7};
    const Trajectory traj = simulate_oscillator(m, [](double) { return 0.0; }, x0, sim);
    for (int k = 0; k < traj.samples(); ++k) {
        if (traj.times[static_cast<std::size_t>(k)] < 0.9 * sim.t_end) continue;
        CHECK(traj.state(k, 0, 0) <= bounds[0] + 1e-3);
        CHECK(traj.state(k, 0, 1) <= bounds[1] + 1e-3);
    }
}

TEST_CASE("ultimate bounds: circadian model is out of reach (the load-bearing error)") {
    try {
        ultimate_bounds(gonze_model(), 0.0005);
        FAIL("expected BoundUndefinedError");
    } catch (const BoundUndefinedError& e) {
        CHECK(e.block_index == 1);
        CHECK(e.input_value == doctest::Approx(0.7005));
        CHECK(e.sup_rate == doctest::Approx(0.35));
    }
}

TEST_CASE("ultimate bounds are monotone in the input bound") {
    const CfsModel m = model_preset("linear-goodwin");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        double a = dist(rng), b = dist(rng);
        if (a > b) std::swap(a, b);
        const auto ba = ultimate_bounds(m, a);
        const auto bb = ultimate_bounds(m, b);
        for (std::size_t i = 0; i < ba.size(); ++i) CHECK(ba[i] <= bb[i] + 1e-12);
    }
}

TEST_CASE("secant gains") {
    SUBCASE("constant ratio for linear pairs") {
        auto m = chain({{KineticFunction(Linear{2.0}), KineticFunction(Linear{5.0})}},
                       KineticFunction(HillInhibition{1.0, 1.0, 2.0}));
        const auto gains = secant_gains(m, std::vector<double>{3.0}, 0.0);
        CHECK(gains[0] == doctest::Approx(2.5));
    }

    SUBCASE("increasing ratio peaks at the box edge") {
        auto m = chain({{KineticFunction(MichaelisMenten{0.35, 1.0}), KineticFunction(Linear{0.7})}},
                       KineticFunction(HillInhibition{0.7, 1.0, 4.0}));
        const auto gains = secant_gains(m, std::vector<double>{2.0}, 0.0);
        // 0.7 / (0.35/(1+2)^2) = 18; dense-grid oracle for the same box.
        double scan = 0.0;
        for (int i = 0; i <= 100000; ++i) {
            const double x = 2.0 * i / 100000.0;
            scan = std::max(scan, 0.7 / (0.35 / ((1.0 + x) * (1.0 + x))));
        }
        CHECK(gains[0] == doctest::Approx(18.0).epsilon(1e-9));
        CHECK(gains[0] == doctest::Approx(scan).epsilon(1e-9));
    }

    SUBCASE("feedback gain has an interior maximizer") {
        auto m = chain({{KineticFunction(Linear{1.0}), KineticFunction(Linear{2.0})}},
                       KineticFunction(HillInhibition{0.7, 1.0, 4.0}));
        // Box for the feedback argument is [0, g_1(1 + 0)] = [0, 2].
        const auto gains = secant_gains(m, std::vector<double>{1.0}, 0.0);
        double scan = 0.0;
        const KineticFunction hill(HillInhibition{0.7, 1.0, 4.0});
        for (int i = 0; i <= 200000; ++i) {
            scan = std::max(scan, hill.derivative(2.0 * i / 200000.0));
        }
        CHECK(gains[1] == doctest::Approx(scan).epsilon(1e-8));
        // Maximizer sits near (3/5)^(1/4), so the max beats both endpoints.
        CHECK(gains[1] > hill.derivative(2.0));
        CHECK(gains[1] > 1e-6);
    }
}

TEST_CASE("chain gain assembly") {
    const std::vector<double> unit{1.0, 1.0, 1.0};
    CHECK(iofp_gain(unit, true) == doctest::Approx(-0.875));  // cos(pi/3)^3 = 1/8
    CHECK(iofp_gain(unit, false) == doctest::Approx(0.0));

    const std::vector<double> with_inf{kInfinite, 2.0, 3.0, 4.0};
    CHECK(iofp_gain(with_inf, false) == doctest::Approx(24.0));

    const std::vector<double> bad{1.0, kInfinite, 3.0};
    CHECK_THROWS_AS(iofp_gain(bad, false), InfiniteGainError);

    SUBCASE("the secant-weighted form never exceeds the plain form") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> dist(0.05, 4.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> gains(2 + rng() % 4);
            for (double& g : gains) g = dist(rng);
            const double plain = iofp_gain(gains, false);
            CHECK(iofp_gain(gains, true) <= plain + 1e-12);
            CHECK(plain >= -1.0 / gains[0] - 1e-12);  // the trailing product is positive
        }
    }
}

TEST_CASE("minimal coupling gain") {
    const KineticFunction g0(SaturatingCoupling{0.0005, 0.9});

    SUBCASE("nonpositive chain gain needs no coupling") {
        const auto r = min_coupling_gain(-0.5, 10.0, 18.0, 1.0, g0);
        CHECK(r.converged);
        CHECK(r.c_min == doctest::Approx(0.0));
    }

    SUBCASE("a large chain gain is out of reach for the bounded family") {
        // The LHS peaks near c*|L|*y* = 1 at about lambda2*M0*rho/(8*|L|*y*),
        // around 3e-5 here, so k = 1 admits no finite threshold.
        const auto r = min_coupling_gain(1.0, 10.0, 18.0, 1.0, g0);
        CHECK_FALSE(r.converged);
        CHECK(std::isinf(r.c_min));
        CHECK(r.lhs_at_c < 1e-3);
        CHECK(r.lhs_at_c > 0.0);
    }

    SUBCASE("bisection agrees with an exhaustive log scan on feasible tuples") {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> l2(1.0, 20.0);
        std::uniform_real_distribution<double> norm(2.0, 30.0);
        std::uniform_real_distribution<double> ystar(0.2, 5.0);
        std::uniform_real_distribution<double> m0(1e-4, 1e-2);
        std::uniform_real_distribution<double> rho(0.5, 0.95);
        std::uniform_real_distribution<double> frac(0.05, 0.9);
        for (int trial = 0; trial < 3; ++trial) {
            const double lambda = l2(rng), gnorm = norm(rng), yb = ystar(rng);
            const KineticFunction sat(SaturatingCoupling{m0(rng), rho(rng)});
            const auto lhs = [&](double c) {
                return c * derivative_infimum_symmetric(sat, c * gnorm * yb) * lambda;
            };
            // Peak of the LHS on a log grid fixes a feasible k below it.
            double peak = 0.0;
            for (int i = 0; i <= 2000; ++i) {
                peak = std::max(peak, lhs(std::pow(10.0, -6.0 + 15.0 * i / 2000.0)));
            }
            const double k = frac(rng) * peak;
            const auto r = min_coupling_gain(k, lambda, gnorm, yb, sat);
            REQUIRE(r.converged);
            // Oracle: bracket on a coarse sweep, then a 10^6-point linear scan.
            double prev = 1e-6;
            double bracket_lo = 0.0, bracket_hi = 0.0;
            for (int i = 0; i <= 3000; ++i) {
                const double c = std::pow(10.0, -6.0 + 15.0 * i / 3000.0);
                if (lhs(c) > k) {
                    bracket_lo = prev;
                    bracket_hi = c;
                    break;
                }
                prev = c;
            }
            REQUIRE(bracket_hi > 0.0);
            double oracle = bracket_hi;
            for (int i = 0; i <= 1000000; ++i) {
                const double c = bracket_lo + (bracket_hi - bracket_lo) * i / 1000000.0;
                if (c > 0.0 && lhs(c) > k) {
                    oracle = c;
                    break;
                }
            }
            CHECK(std::abs(r.c_min - oracle) <= 1e-6 * oracle);
        }
    }

    SUBCASE("the returned gain sits exactly on the ascending crossing") {
        const KineticFunction sat(SaturatingCoupling{0.3, 0.9});
        const auto lhs = [&](double c) {
            return c * derivative_infimum_symmetric(sat, c * 6.0 * 1.85) * 4.0;
        };
        const auto r = min_coupling_gain(0.005, 4.0, 6.0, 1.85, sat);
        REQUIRE(r.converged);
        CHECK(lhs(r.c_min * (1.0 + 1e-9)) > 0.005);
        CHECK(lhs(r.c_min * (1.0 - 1e-6)) <= 0.005);
        CHECK(r.lhs_at_c >= r.rhs - 1e-9);
    }

    SUBCASE("preconditions") {
        CHECK_THROWS_AS(min_coupling_gain(0.5, 0.0, 18.0, 1.0, g0), AnalysisError);
        CHECK_THROWS_AS(min_coupling_gain(0.5, 10.0, 18.0, 0.0, g0), AnalysisError);
        CHECK_THROWS_AS(min_coupling_gain(kInfinite, 10.0, 18.0, 1.0, g0), AnalysisError);
    }
}

TEST_CASE("incremental passivity of the reaction blocks") {
    SUBCASE("identical trajectories have zero increments") {
        const KineticFunction f(Linear{1.0});
        const KineticFunction g(Identity{});
        const auto traj = simulate_block(f, g, 1.0, smooth_input(0.9, 5), 0.01, 20.0);
        CHECK(incremental_passivity_violation(g, traj, traj, 1.0, Interval{0.0, 2.0}) ==
              doctest::Approx(0.0));
    }

    SUBCASE("linear block satisfies the inequality with gain 1") {
        const KineticFunction f(Linear{1.0});
        const KineticFunction g(Identity{});
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto a = simulate_block(f, g, 0.4 + 0.1 * seed, smooth_input(0.9, seed), 0.01,
                                          40.0);
            const auto b = simulate_block(f, g, 1.4 - 0.1 * seed, smooth_input(0.9, seed + 100),
                                          0.01, 40.0);
            const double v = incremental_passivity_violation(g, a, b, 1.0, Interval{0.0, 2.0});
            CHECK(v <= 1e-4);
        }
    }

    SUBCASE("Michaelis-Menten block with the box gain") {
        const KineticFunction f(MichaelisMenten{0.35, 1.0});
        const KineticFunction g(Linear{0.7});
        const double umax = 0.99 * f.value(2.0);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto a = simulate_block(f, g, 0.5, smooth_input(umax, seed), 0.01, 40.0);
            const auto b = simulate_block(f, g, 1.5, smooth_input(umax, seed + 50), 0.01, 40.0);
            const double v =
                incremental_passivity_violation(g, a, b, 1.0 / 18.0, Interval{0.0, 2.0});
            CHECK(v <= 1e-4);
        }
    }

    SUBCASE("leaving the declared interval is a precondition error") {
        const KineticFunction f(Linear{1.0});
        const KineticFunction g(Identity{});
        const auto a = simulate_block(f, g, 1.0, smooth_input(0.9, 1), 0.01, 10.0);
        const auto b = simulate_block(f, g, 1.0, smooth_input(0.9, 2), 0.01, 10.0);
        CHECK_THROWS_AS(incremental_passivity_violation(g, a, b, 1.0, Interval{0.0, 0.5}),
                        AnalysisError);
    }
}

TEST_CASE("static block gain check") {
    CHECK(static_block_check(KineticFunction(Identity{}), Interval{0.0, 2.0}, 1.0, 7));
    CHECK_FALSE(static_block_check(KineticFunction(Identity{}), Interval{0.0, 2.0}, 0.5, 7));
    const KineticFunction hill(HillInhibition{0.7, 1.0, 4.0});
    CHECK(static_block_check(hill, Interval{0.0, 2.0}, max_derivative_on(hill, 0.0, 2.0), 7));
}
