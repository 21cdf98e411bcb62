#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "goodwin/kinetics.hpp"
#include "goodwin/oscillator.hpp"

namespace goodwin {

/// Per-block secant gains and the chain gains assembled from them over the
/// inflated ultimate-bound box.
struct GainReport {
    std::vector<double> gains;         // gamma_1..gamma_n; gamma_1 may be +inf
    double iofp_gain = 0.0;            // -1/gamma_1 + prod_{i>=2} gamma_i
    double iofp_gain_secant = 0.0;     // same product scaled by cos^n(pi/n)
    std::vector<double> state_bounds;  // ultimate bounds per state, nM
    double output_bound = 0.0;         // g_1(state_bounds[0])
    double inflation = 0.0;            // box inflation epsilon used for the gains
};

/// Outcome of the coupling-strength search.
struct ThresholdResult {
    double c_min = 0.0;     // smallest gain satisfying the criterion (0 if k <= 0)
    double lhs_at_c = 0.0;  // criterion LHS at c_min (or its observed maximum on failure)
    double rhs = 0.0;       // the chain gain the LHS must exceed
    bool converged = false;
};

/// Integral of 1/f over [1, x]. Closed form for linear and Michaelis-Menten
/// loss maps, adaptive quadrature (1e-9 relative) otherwise. Diverging to
/// -infinity at 0 and +infinity at infinity is exactly the property that keeps
/// solutions positive. Throws DomainError for x <= 0 or f not positive on
/// (0, inf).
double inverse_rate_integral(const KineticFunction& f, double x);

/// Ultimate bounds per state under any input confined to [0, input_bound]:
/// with M = input_bound + M_n, the recursion x_1 = f_1^{-1}(M),
/// x_i = f_i^{-1}(g_{i-1}(x_{i-1})) yields ceilings independent of the initial
/// conditions. Throws BoundUndefinedError naming the block whose inverse is
/// not defined at the required value.
std::vector<double> ultimate_bounds(const CfsModel& m, double input_bound);

/// Secant gains over the inflated box: for i < n the maximum of g_i'/f_i' on
/// [0, state_bounds[i] + inflation]; for the static block the maximum of g_n'
/// on [0, g_{n-1}(state_bounds[n-2] + inflation)]. Grid of 10^4 points with
/// local golden-section refinement (monotone profiles take the endpoint).
/// An unbounded derivative inside a box yields +infinity for that gain.
std::vector<double> secant_gains(const CfsModel& m, std::span<const double> state_bounds,
                                 double inflation);

/// Chain gain from per-block gains: -1/gamma_1 + prod_{i>=2} gamma_i, with
/// the optional cos^n(pi/n) factor on the product. gamma_1 = +inf drops the
/// leading term. Throws InfiniteGainError if any trailing gain is infinite.
double iofp_gain(std::span<const double> gains, bool with_secant_factor);

/// Smallest c > 0 with c * nu(c * graph_norm * output_bound) * lambda2 > k,
/// where nu(s) is the infimum of g0' over [-s, s]. The LHS is unimodal in c
/// for the saturating family (rises like c^rho while the argument is small,
/// then decays), so the search scans a log grid over [1e-6, 1e9] and bisects
/// the ascending crossing. k <= 0 needs no coupling (c_min = 0). When the LHS
/// never exceeds k the result has converged = false and lhs_at_c holds the
/// observed maximum.
ThresholdResult min_coupling_gain(double k, double lambda2, double graph_norm,
                                  double output_bound, const KineticFunction& g0);

/// Scalar block trajectory on a uniform grid (produced by the simulator).
struct BlockTrajectory {
    std::vector<double> times;
    std::vector<double> states;
    std::vector<double> inputs;
    std::vector<double> outputs;
};

/// Largest sampled violation of the incremental dissipation inequality for
/// one reaction block, using the quadratic storage S(dx) = (e/2) dx^2 with
/// e = inf g' on the box. Differentiates S by central differences on the
/// recorded grid and returns max_k [ Sdot_k - du_k dy_k + k_tilde dy_k^2 ];
/// a valid block keeps this below discretization error. Trajectories must
/// share the time grid and stay inside the box.
double incremental_passivity_violation(const KineticFunction& g, const BlockTrajectory& a,
                                       const BlockTrajectory& b, double feedback_gain,
                                       Interval box);

/// Samples u1 > u2 pairs in the interval and checks
/// 0 <= g(u1) - g(u2) <= gamma (u1 - u2) on all of them.
bool static_block_check(const KineticFunction& g, Interval interval, double gamma,
                        std::uint64_t seed = 0, int pairs = 1000);

}  // namespace goodwin
