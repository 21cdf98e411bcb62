#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "goodwin/analysis.hpp"
#include "goodwin/graph.hpp"
#include "goodwin/kinetics.hpp"
#include "goodwin/oscillator.hpp"

namespace goodwin {

/// Coupling rule mapping the vector of first-block outputs to external inputs.
struct Protocol {
    enum class Kind { None, Linear, Saturated };

    Kind kind = Kind::None;
    double gain = 0.0;                          // coupling gain c (>= 0)
    std::optional<KineticFunction> saturation;  // g0, Saturated only

    static Protocol none();
    static Protocol linear(double c);
    static Protocol saturated(double c, double M0, double rho);
    static Protocol saturated(double c, KineticFunction g0);
};

enum class Integrator { Rk4, Rkf45 };

/// Initial states: explicit per-oscillator vectors when `states` is nonempty,
/// otherwise seeded uniform draws. `ranges` holds either one interval applied
/// to every state or one interval per state.
struct InitialSpec {
    std::vector<std::vector<double>> states;
    std::vector<Interval> ranges{Interval{0.5, 1.5}};
};

struct SimConfig {
    double t_end = 600.0;  // h; rounded to the nearest multiple of dt (Rk4)
    double dt = 0.01;      // h; initial step for Rkf45
    Integrator method = Integrator::Rk4;
    double rel_tol = 1e-8;   // Rkf45
    double abs_tol = 1e-10;  // Rkf45
    int record_stride = 10;  // record every k-th step (first and last always)
    std::uint64_t seed = 1;
    InitialSpec initial;
};

/// Recorded run: times, stacked states (sample-major, then oscillator, then
/// state), external inputs and first-block outputs per oscillator.
struct Trajectory {
    int n_oscillators = 0;
    int state_dim = 0;
    std::vector<double> times;
    std::vector<double> states;
    std::vector<double> inputs;
    std::vector<double> outputs;

    int samples() const { return static_cast<int>(times.size()); }
    double state(int sample, int osc, int i) const {
        return states[(static_cast<std::size_t>(sample) * n_oscillators + osc) * state_dim + i];
    }
    std::span<const double> states_at(int sample) const {
        const std::size_t w = static_cast<std::size_t>(n_oscillators) * state_dim;
        return {states.data() + sample * w, w};
    }
    std::span<const double> inputs_at(int sample) const {
        return {inputs.data() + static_cast<std::size_t>(sample) * n_oscillators,
                static_cast<std::size_t>(n_oscillators)};
    }
    std::span<const double> outputs_at(int sample) const {
        return {outputs.data() + static_cast<std::size_t>(sample) * n_oscillators,
                static_cast<std::size_t>(n_oscillators)};
    }
};

/// External inputs from outputs: zeros for None; c * (-L y1) for Linear;
/// g0(c * (-L y1)) componentwise for Saturated, so every input stays inside
/// (0, M0). Row products use correctly rounded summation.
std::vector<double> coupling_inputs(const Protocol& p, const Matrix& laplacian,
                                    std::span<const double> y1);

/// One classical Runge-Kutta step of the coupled network; inputs are
/// recomputed at every internal stage. States are never clamped.
std::vector<double> rk4_step(const CfsModel& m, const Protocol& p, const Matrix& laplacian,
                             std::span<const double> state, double dt);

/// Integrate the coupled network. Deterministic given the seed. Throws
/// PositivityViolationError if any component drops below -1e-9 (exact
/// solutions from positive data stay positive, so that is a discretization
/// fault) and DivergenceError on non-finite states.
Trajectory simulate(const CfsModel& m, const Protocol& p, const CouplingGraph& g,
                    const SimConfig& config);

/// Single oscillator driven by an explicit input signal u_ext(t) >= 0.
Trajectory simulate_oscillator(const CfsModel& m, const std::function<double(double)>& u_ext,
                               std::span<const double> x0, const SimConfig& config);

/// Synchronization diagnostics per recorded sample: the worst pairwise state
/// gap max_{i,j,k} |x_i^j - x_i^k|, its RMS counterpart, and the norm of the
/// mean-removed output vector (the quantity whose decay the dissipation
/// inequality predicts).
struct SyncSeries {
    std::vector<double> max_gap;
    std::vector<double> rms;
    std::vector<double> output_disagreement;
};

SyncSeries sync_metrics(const Trajectory& traj);

/// Means of `values` over consecutive windows of the given width (h).
std::vector<double> windowed_means(std::span<const double> values, std::span<const double> times,
                                   double window);

/// Mean peak-to-peak interval of one state component after discarding the
/// transient, with quadratic interpolation around each sampled maximum.
/// Throws NotOscillatingError when fewer than three peaks exist.
double period_estimate(const Trajectory& traj, int oscillator, int state,
                       double transient = 100.0);

/// Integrate one reaction block xdot = -f(x) + u(t), y = g(x), recording
/// every step. Feeds the incremental-passivity checks.
BlockTrajectory simulate_block(const KineticFunction& f, const KineticFunction& g, double x0,
                               const std::function<double(double)>& input, double dt,
                               double t_end);

}  // namespace goodwin
