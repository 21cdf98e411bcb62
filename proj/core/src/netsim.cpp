#include "goodwin/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "goodwin/errors.hpp"
#include "goodwin/numerics.hpp"

namespace goodwin {

Protocol Protocol::none() { return Protocol{Kind::None, 0.0, std::nullopt}; }

Protocol Protocol::linear(double c) {
    if (c < 0.0) throw ConfigError("protocol: coupling gain must be >= 0");
    return Protocol{Kind::Linear, c, std::nullopt};
}

Protocol Protocol::saturated(double c, double M0, double rho) {
    return saturated(c, KineticFunction(SaturatingCoupling{M0, rho}));
}

Protocol Protocol::saturated(double c, KineticFunction g0) {
    if (c < 0.0) throw ConfigError("protocol: coupling gain must be >= 0");
    if (!std::holds_alternative<SaturatingCoupling>(g0.variant())) {
        throw ConfigError("protocol: saturation map must be a saturating_coupling variant");
    }
    return Protocol{Kind::Saturated, c, std::move(g0)};
}

std::vector<double> coupling_inputs(const Protocol& p, const Matrix& laplacian,
                                    std::span<const double> y1) {
    const int n = static_cast<int>(y1.size());
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    if (p.kind == Protocol::Kind::None) return u;
    for (int j = 0; j < n; ++j) {
        const double v = -exact_dot(laplacian.row(j), y1);
        u[static_cast<std::size_t>(j)] =
            p.kind == Protocol::Kind::Linear ? p.gain * v : p.saturation->value(p.gain * v);
    }
    return u;
}

namespace {

// Coupled vector field with reusable buffers: recomputes outputs and protocol
// inputs from the stage state, then stacks the per-oscillator fields.
class CoupledField {
public:
    CoupledField(const CfsModel& m, const Protocol& p, const Matrix& laplacian, int n_osc)
        : model_(m),
          protocol_(p),
          laplacian_(laplacian),
          n_(n_osc),
          dim_(m.state_dim()),
          y1_(static_cast<std::size_t>(n_osc)),
          u_(static_cast<std::size_t>(n_osc)) {}

    void operator()(std::span<const double> state, std::span<double> dstate) {
        compute_inputs(state);
        for (int j = 0; j < n_; ++j) {
            const auto x = state.subspan(static_cast<std::size_t>(j) * dim_,
                                         static_cast<std::size_t>(dim_));
            auto dx = dstate.subspan(static_cast<std::size_t>(j) * dim_,
                                     static_cast<std::size_t>(dim_));
            vector_field(model_, x, u_[static_cast<std::size_t>(j)], dx);
        }
    }

    // Outputs/inputs for the given state (also used for recording).
    void compute_inputs(std::span<const double> state) {
        for (int j = 0; j < n_; ++j) {
            y1_[static_cast<std::size_t>(j)] = output_y1(
                model_, state.subspan(static_cast<std::size_t>(j) * dim_,
                                      static_cast<std::size_t>(dim_)));
        }
        u_ = coupling_inputs(protocol_, laplacian_, y1_);
    }

    const std::vector<double>& outputs() const { return y1_; }
    const std::vector<double>& inputs() const { return u_; }

private:
    const CfsModel& model_;
    const Protocol& protocol_;
    const Matrix& laplacian_;
    int n_;
    int dim_;
    std::vector<double> y1_;
    std::vector<double> u_;
};

using Field = std::function<void(std::span<const double>, std::span<double>)>;

void check_state(std::span<const double> state, double t, int dim) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double v = state[i];
        if (!std::isfinite(v)) {
            throw DivergenceError("state became non-finite at t = " + std::to_string(t), t);
        }
        if (v < -1e-9) {
            const int osc = static_cast<int>(i) / dim;
            const int comp = static_cast<int>(i) % dim;
            throw PositivityViolationError(
                "state " + std::to_string(comp + 1) + " of oscillator " + std::to_string(osc + 1) +
                    " reached " + std::to_string(v) + " at t = " + std::to_string(t) +
                    "; exact solutions stay positive, reduce dt",
                t, osc, comp, v);
        }
    }
}

// Vet a stage buffer before handing it to the kinetics: beyond -1e-9 is an
// integration fault; jitter inside the tolerance band evaluates at the
// boundary. Only the evaluation copy is touched, never the committed state.
void guard_stage(std::span<double> stage, double t, int dim) {
    check_state(stage, t, dim);
    for (double& v : stage) {
        if (v < 0.0) v = 0.0;
    }
}

void rk4_step_inner(const Field& f, std::span<const double> x, double t, double dt,
                    std::span<double> out, std::vector<double>& k1, std::vector<double>& k2,
                    std::vector<double>& k3, std::vector<double>& k4, std::vector<double>& tmp,
                    int dim) {
    const std::size_t n = x.size();
    std::copy(x.begin(), x.end(), tmp.begin());
    guard_stage(tmp, t, dim);
    f(tmp, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    guard_stage(tmp, t, dim);
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    guard_stage(tmp, t, dim);
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    guard_stage(tmp, t, dim);
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

std::vector<double> draw_initial_states(const CfsModel& m, int n_osc, const SimConfig& config) {
    const int dim = m.state_dim();
    const auto& init = config.initial;
    std::vector<double> state(static_cast<std::size_t>(n_osc) * dim);
    if (!init.states.empty()) {
        if (static_cast<int>(init.states.size()) != n_osc) {
            throw ConfigError("initial states: expected " + std::to_string(n_osc) + " rows, got " +
                              std::to_string(init.states.size()));
        }
        for (int j = 0; j < n_osc; ++j) {
            const auto& row = init.states[static_cast<std::size_t>(j)];
            if (static_cast<int>(row.size()) != dim) {
                throw ConfigError("initial states: row " + std::to_string(j) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(dim));
            }
            for (int i = 0; i < dim; ++i) {
                if (!(row[static_cast<std::size_t>(i)] > 0.0)) {
                    throw ConfigError("initial states must be strictly positive");
                }
                state[static_cast<std::size_t>(j) * dim + i] = row[static_cast<std::size_t>(i)];
            }
        }
        return state;
    }
    if (init.ranges.empty() ||
        (init.ranges.size() != 1 && static_cast<int>(init.ranges.size()) != dim)) {
        throw ConfigError("initial ranges: need one interval or one per state");
    }
    std::mt19937_64 rng(config.seed);
    for (int j = 0; j < n_osc; ++j) {
        for (int i = 0; i < dim; ++i) {
            const Interval r =
                init.ranges.size() == 1 ? init.ranges[0] : init.ranges[static_cast<std::size_t>(i)];
            if (!(r.lo > 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
                throw ConfigError("initial ranges must be bounded with lo > 0");
            }
            std::uniform_real_distribution<double> dist(r.lo, r.hi);
            state[static_cast<std::size_t>(j) * dim + i] = dist(rng);
        }
    }
    return state;
}

struct Recorder {
    Trajectory traj;

    void add(double t, std::span<const double> state, std::span<const double> u,
             std::span<const double> y1) {
        traj.times.push_back(t);
        traj.states.insert(traj.states.end(), state.begin(), state.end());
        traj.inputs.insert(traj.inputs.end(), u.begin(), u.end());
        traj.outputs.insert(traj.outputs.end(), y1.begin(), y1.end());
    }
};

Trajectory run_fixed_step(const CfsModel& m, CoupledField& field, std::vector<double> state,
                          int n_osc, const SimConfig& config) {
    const int dim = m.state_dim();
    const long n_steps = std::max(1L, std::lround(config.t_end / config.dt));
    Recorder rec;
    rec.traj.n_oscillators = n_osc;
    rec.traj.state_dim = dim;

    const std::size_t total = state.size();
    std::vector<double> next(total), k1(total), k2(total), k3(total), k4(total), tmp(total);
    const Field f = [&field](std::span<const double> x, std::span<double> dx) { field(x, dx); };

    check_state(state, 0.0, dim);
    for (long step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * config.dt;
        if (step % config.record_stride == 0 || step == n_steps) {
            field.compute_inputs(state);
            rec.add(t, state, field.inputs(), field.outputs());
        }
        if (step == n_steps) break;
        rk4_step_inner(f, state, t, config.dt, next, k1, k2, k3, k4, tmp, dim);
        state.swap(next);
        check_state(state, t + config.dt, dim);
    }
    return rec.traj;
}

// Fehlberg 4(5) embedded pair with standard step control.
Trajectory run_adaptive(const CfsModel& m, CoupledField& field, std::vector<double> state,
                        int n_osc, const SimConfig& config) {
    const int dim = m.state_dim();
    Recorder rec;
    rec.traj.n_oscillators = n_osc;
    rec.traj.state_dim = dim;

    const std::size_t total = state.size();
    std::vector<double> k1(total), k2(total), k3(total), k4(total), k5(total), k6(total),
        tmp(total), x5(total), x4(total);

    double t = 0.0;
    double h = config.dt;
    long accepted = 0;
    check_state(state, t, dim);
    field.compute_inputs(state);
    rec.add(t, state, field.inputs(), field.outputs());

    const auto stage = [&](std::vector<double>& buf, std::vector<double>& out) {
        guard_stage(buf, t, dim);
        field(buf, out);
    };

    while (t < config.t_end - 1e-12 * config.t_end) {
        h = std::min(h, config.t_end - t);
        std::copy(state.begin(), state.end(), tmp.begin());
        stage(tmp, k1);
        for (std::size_t i = 0; i < total; ++i) tmp[i] = state[i] + h * (0.25 * k1[i]);
        stage(tmp, k2);
        for (std::size_t i = 0; i < total; ++i)
            tmp[i] = state[i] + h * (3.0 / 32.0 * k1[i] + 9.0 / 32.0 * k2[i]);
        stage(tmp, k3);
        for (std::size_t i = 0; i < total; ++i)
            tmp[i] = state[i] + h * (1932.0 / 2197.0 * k1[i] - 7200.0 / 2197.0 * k2[i] +
                                     7296.0 / 2197.0 * k3[i]);
        stage(tmp, k4);
        for (std::size_t i = 0; i < total; ++i)
            tmp[i] = state[i] + h * (439.0 / 216.0 * k1[i] - 8.0 * k2[i] +
                                     3680.0 / 513.0 * k3[i] - 845.0 / 4104.0 * k4[i]);
        stage(tmp, k5);
        for (std::size_t i = 0; i < total; ++i)
            tmp[i] = state[i] + h * (-8.0 / 27.0 * k1[i] + 2.0 * k2[i] - 3544.0 / 2565.0 * k3[i] +
                                     1859.0 / 4104.0 * k4[i] - 11.0 / 40.0 * k5[i]);
        stage(tmp, k6);
        double err = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            x5[i] = state[i] + h * (16.0 / 135.0 * k1[i] + 6656.0 / 12825.0 * k3[i] +
                                    28561.0 / 56430.0 * k4[i] - 9.0 / 50.0 * k5[i] +
                                    2.0 / 55.0 * k6[i]);
            x4[i] = state[i] + h * (25.0 / 216.0 * k1[i] + 1408.0 / 2565.0 * k3[i] +
                                    2197.0 / 4104.0 * k4[i] - 0.2 * k5[i]);
            const double scale =
                config.abs_tol + config.rel_tol * std::max(std::abs(state[i]), std::abs(x5[i]));
            err = std::max(err, std::abs(x5[i] - x4[i]) / scale);
        }
        if (err <= 1.0) {
            t += h;
            state = x5;
            check_state(state, t, dim);
            ++accepted;
            const bool last = t >= config.t_end - 1e-12 * config.t_end;
            if (accepted % config.record_stride == 0 || last) {
                field.compute_inputs(state);
                rec.add(t, state, field.inputs(), field.outputs());
            }
        }
        const double factor =
            err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h *= factor;
        if (!(h > 1e-12)) {
            throw SimulationError("adaptive step size collapsed at t = " + std::to_string(t));
        }
    }
    return rec.traj;
}

}  // namespace

std::vector<double> rk4_step(const CfsModel& m, const Protocol& p, const Matrix& laplacian,
                             std::span<const double> state, double dt) {
    const int dim = m.state_dim();
    if (state.size() % static_cast<std::size_t>(dim) != 0) {
        throw ConfigError("rk4_step: state length is not a multiple of the model dimension");
    }
    const int n_osc = static_cast<int>(state.size()) / dim;
    CoupledField field(m, p, laplacian, n_osc);
    const Field f = [&field](std::span<const double> x, std::span<double> dx) { field(x, dx); };
    const std::size_t total = state.size();
    std::vector<double> out(total), k1(total), k2(total), k3(total), k4(total), tmp(total);
    rk4_step_inner(f, state, 0.0, dt, out, k1, k2, k3, k4, tmp, dim);
    return out;
}

Trajectory simulate(const CfsModel& m, const Protocol& p, const CouplingGraph& g,
                    const SimConfig& config) {
    if (!(config.dt > 0.0) || !(config.t_end > 0.0) || config.record_stride < 1) {
        throw ConfigError("sim config: need dt > 0, t_end > 0, record_stride >= 1");
    }
    const int n_osc = g.size();
    const Matrix l = laplacian(g);
    CoupledField field(m, p, l, n_osc);
    std::vector<double> state = draw_initial_states(m, n_osc, config);
    if (config.method == Integrator::Rk4) {
        return run_fixed_step(m, field, std::move(state), n_osc, config);
    }
    return run_adaptive(m, field, std::move(state), n_osc, config);
}

Trajectory simulate_oscillator(const CfsModel& m, const std::function<double(double)>& u_ext,
                               std::span<const double> x0, const SimConfig& config) {
    if (!(config.dt > 0.0) || !(config.t_end > 0.0) || config.record_stride < 1) {
        throw ConfigError("sim config: need dt > 0, t_end > 0, record_stride >= 1");
    }
    const int dim = m.state_dim();
    if (static_cast<int>(x0.size()) != dim) {
        throw ConfigError("simulate_oscillator: x0 has wrong dimension");
    }
    for (double v : x0) {
        if (!(v > 0.0)) throw ConfigError("initial states must be strictly positive");
    }

    Recorder rec;
    rec.traj.n_oscillators = 1;
    rec.traj.state_dim = dim;

    const long n_steps = std::max(1L, std::lround(config.t_end / config.dt));
    std::vector<double> state(x0.begin(), x0.end());
    std::vector<double> next(state.size()), k1(state.size()), k2(state.size()), k3(state.size()),
        k4(state.size()), tmp(state.size());
    // The input is sampled at the classical stage times t, t+dt/2, t+dt.
    const auto eval = [&](double t, std::vector<double>& x, std::vector<double>& dx) {
        guard_stage(x, t, dim);
        vector_field(m, x, u_ext(t), dx);
    };
    const auto step_with_time = [&](double t, double dt) {
        const std::size_t n = state.size();
        std::copy(state.begin(), state.end(), tmp.begin());
        eval(t, tmp, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
        eval(t + 0.5 * dt, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
        eval(t + 0.5 * dt, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + dt * k3[i];
        eval(t + dt, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        state.swap(next);
    };

    check_state(state, 0.0, dim);
    for (long step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * config.dt;
        if (step % config.record_stride == 0 || step == n_steps) {
            const double u = u_ext(t);
            const double y = output_y1(m, state);
            rec.add(t, state, {&u, 1}, {&y, 1});
        }
        if (step == n_steps) break;
        step_with_time(t, config.dt);
        check_state(state, t + config.dt, dim);
    }
    return rec.traj;
}

SyncSeries sync_metrics(const Trajectory& traj) {
    const int n = traj.n_oscillators;
    const int dim = traj.state_dim;
    SyncSeries out;
    out.max_gap.reserve(static_cast<std::size_t>(traj.samples()));
    out.rms.reserve(static_cast<std::size_t>(traj.samples()));
    out.output_disagreement.reserve(static_cast<std::size_t>(traj.samples()));
    for (int k = 0; k < traj.samples(); ++k) {
        double gap = 0.0;
        double sq = 0.0;
        for (int i = 0; i < dim; ++i) {
            double lo = traj.state(k, 0, i);
            double hi = lo;
            double mean = 0.0;
            for (int j = 0; j < n; ++j) {
                const double v = traj.state(k, j, i);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                mean += v;
            }
            mean /= n;
            for (int j = 0; j < n; ++j) {
                const double d = traj.state(k, j, i) - mean;
                sq += d * d;
            }
            gap = std::max(gap, hi - lo);
        }
        out.max_gap.push_back(gap);
        out.rms.push_back(std::sqrt(sq / (static_cast<double>(n) * dim)));

        const auto y = traj.outputs_at(k);
        double ymean = 0.0;
        for (double v : y) ymean += v;
        ymean /= n;
        double ysq = 0.0;
        for (double v : y) ysq += (v - ymean) * (v - ymean);
        out.output_disagreement.push_back(std::sqrt(ysq));
    }
    return out;
}

std::vector<double> windowed_means(std::span<const double> values, std::span<const double> times,
                                   double window) {
    if (values.size() != times.size() || values.empty() || !(window > 0.0)) {
        throw DomainError("windowed_means: mismatched series or nonpositive window");
    }
    std::vector<double> means;
    double start = times.front();
    double acc = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (times[k] >= start + window) {
            if (count > 0) means.push_back(acc / count);
            acc = 0.0;
            count = 0;
            while (times[k] >= start + window) start += window;
        }
        acc += values[k];
        ++count;
    }
    if (count > 0) means.push_back(acc / count);
    return means;
}

double period_estimate(const Trajectory& traj, int oscillator, int state, double transient) {
    std::vector<double> ts, vs;
    ts.reserve(static_cast<std::size_t>(traj.samples()));
    vs.reserve(static_cast<std::size_t>(traj.samples()));
    for (int k = 0; k < traj.samples(); ++k) {
        if (traj.times[static_cast<std::size_t>(k)] < transient) continue;
        ts.push_back(traj.times[static_cast<std::size_t>(k)]);
        vs.push_back(traj.state(k, oscillator, state));
    }
    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < vs.size(); ++k) {
        if (vs[k] > vs[k - 1] && vs[k] > vs[k + 1]) {
            peaks.push_back(
                quadratic_peak(ts[k - 1], ts[k], ts[k + 1], vs[k - 1], vs[k], vs[k + 1]));
        }
    }
    if (peaks.size() < 3) {
        throw NotOscillatingError("period estimate: found " + std::to_string(peaks.size()) +
                                      " peaks after the transient, need at least 3",
                                  static_cast<int>(peaks.size()));
    }
    double total = 0.0;
    for (std::size_t k = 1; k < peaks.size(); ++k) total += peaks[k] - peaks[k - 1];
    return total / static_cast<double>(peaks.size() - 1);
}

BlockTrajectory simulate_block(const KineticFunction& f, const KineticFunction& g, double x0,
                               const std::function<double(double)>& input, double dt,
                               double t_end) {
    if (!(dt > 0.0) || !(t_end > 0.0)) throw ConfigError("simulate_block: need dt, t_end > 0");
    const long n_steps = std::max(1L, std::lround(t_end / dt));
    BlockTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    double x = x0;
    const auto rate = [&](double xs, double t) { return -f.value(xs) + input(t); };
    for (long step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.inputs.push_back(input(t));
        traj.outputs.push_back(g.value(x));
        if (step == n_steps) break;
        const double k1 = rate(x, t);
        const double k2 = rate(x + 0.5 * dt * k1, t + 0.5 * dt);
        const double k3 = rate(x + 0.5 * dt * k2, t + 0.5 * dt);
        const double k4 = rate(x + dt * k3, t + dt);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return traj;
}

}  // namespace goodwin
