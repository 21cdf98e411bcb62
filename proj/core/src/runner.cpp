#include "goodwin/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "goodwin/errors.hpp"
#include "goodwin/netsim.hpp"

namespace goodwin {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string gain_tag(double c) {
    if (std::abs(c - std::round(c)) < 1e-12 && std::abs(c) < 1e15) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.0f", c);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", c);
    return buf;
}

int pool_size(int runs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    int cap = static_cast<int>(hw);
    if (const char* env = std::getenv("GOODWIN_SYNC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) cap = std::min(cap, v);
    }
    return std::max(1, std::min(runs, cap));
}

RunResult run_one(const ScenarioConfig& config, double c, const std::string& out_dir) {
    const Protocol protocol = config.protocol.build(c);
    const Trajectory traj = simulate(config.model, protocol, config.graph, config.sim);

    RunResult result;
    result.c = c;
    result.csv_path = out_dir + "/traj_c" + gain_tag(c) + ".csv";
    write_trajectory_csv(result.csv_path, traj);

    const SyncSeries sync = sync_metrics(traj);
    result.sync_end = sync.max_gap.back();
    result.sync_rms_end = sync.rms.back();
    result.output_disagreement_end = sync.output_disagreement.back();

    result.input_min = traj.inputs.empty() ? 0.0 : traj.inputs.front();
    result.input_max = result.input_min;
    for (double u : traj.inputs) {
        result.input_min = std::min(result.input_min, u);
        result.input_max = std::max(result.input_max, u);
    }

    const double transient = std::min(100.0, config.sim.t_end / 3.0);
    try {
        result.period = period_estimate(traj, 0, 0, transient);
    } catch (const NotOscillatingError& e) {
        result.period_note = e.what();
    }
    return result;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimulationError("cannot open output file \"" + path + "\"");
    out << "t";
    for (int j = 0; j < traj.n_oscillators; ++j) {
        for (int i = 0; i < traj.state_dim; ++i) {
            out << ",osc" << (j + 1) << "_x" << (i + 1);
        }
    }
    for (int j = 0; j < traj.n_oscillators; ++j) out << ",u" << (j + 1);
    out << "\n";
    for (int k = 0; k < traj.samples(); ++k) {
        out << num(traj.times[static_cast<std::size_t>(k)]);
        const auto states = traj.states_at(k);
        for (double v : states) out << "," << num(v);
        const auto inputs = traj.inputs_at(k);
        for (double v : inputs) out << "," << num(v);
        out << "\n";
    }
}

SimulateOutcome run_simulate(const ScenarioConfig& config) {
    std::filesystem::create_directories(config.output_dir);
    std::vector<double> gains = config.sweep;
    if (gains.empty()) gains.push_back(config.protocol.c);

    const int n_runs = static_cast<int>(gains.size());
    std::vector<RunResult> results(static_cast<std::size_t>(n_runs));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n_runs));

    std::atomic<int> next{0};
    const auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= n_runs) return;
            try {
                results[static_cast<std::size_t>(idx)] =
                    run_one(config, gains[static_cast<std::size_t>(idx)], config.output_dir);
            } catch (...) {
                failures[static_cast<std::size_t>(idx)] = std::current_exception();
            }
        }
    };
    const int workers = pool_size(n_runs);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    SimulateOutcome outcome;
    outcome.runs = std::move(results);
    outcome.summary_path = config.output_dir + "/summary.txt";

    std::ofstream summary(outcome.summary_path, std::ios::binary);
    if (!summary) throw SimulationError("cannot open \"" + outcome.summary_path + "\"");
    summary << "goodwin-sync simulation summary\n";
    summary << "model=" << config.model_name << " N=" << config.graph.size()
            << " protocol=" << config.protocol.type;
    if (config.protocol.type == "saturated") {
        summary << " M0=" << num(config.protocol.M0) << " rho=" << num(config.protocol.rho);
    }
    summary << " t_end=" << num(config.sim.t_end) << " dt=" << num(config.sim.dt)
            << " seed=" << config.sim.seed << "\n\n";
    for (const RunResult& r : outcome.runs) {
        summary << "run c=" << gain_tag(r.c) << ": sync_end=" << num(r.sync_end)
                << " sync_rms_end=" << num(r.sync_rms_end)
                << " output_disagreement_end=" << num(r.output_disagreement_end)
                << " u_min=" << num(r.input_min) << " u_max=" << num(r.input_max);
        if (r.period) {
            summary << " period=" << num(*r.period);
        } else {
            summary << " period=n/a";
        }
        summary << " csv=" << std::filesystem::path(r.csv_path).filename().string() << "\n";
    }
    return outcome;
}

AnalyzeReport run_analyze(const ScenarioConfig& config) {
    AnalyzeReport report;
    report.model_name = config.model_name;
    report.block_count = config.model.block_count();
    report.state_dim = config.model.state_dim();
    report.protocol_type = config.protocol.type;
    report.feedback_magnitude = config.model.feedback_magnitude();
    report.n_oscillators = config.graph.size();

    if (config.protocol.type == "saturated") {
        report.protocol_M0 = config.protocol.M0;
        report.protocol_rho = config.protocol.rho;
        report.input_bound = config.protocol.M0;
        report.input_bound_known = true;
    } else if (config.protocol.type == "none") {
        report.input_bound = 0.0;
        report.input_bound_known = true;
    } else {
        // Linear coupling admits no a-priori input bound, so the bound-based
        // pipeline stops here.
        report.input_bound_known = false;
    }
    report.total_bound = report.input_bound + report.feedback_magnitude;

    if (report.input_bound_known) {
        try {
            report.state_bounds = ultimate_bounds(config.model, report.input_bound);
            report.bounds_defined = true;
        } catch (const BoundUndefinedError& e) {
            report.failing_block = e.block_index;
            report.failing_value = e.input_value;
            report.failing_sup = e.sup_rate;
        }
    }

    if (report.bounds_defined) {
        double biggest = 1.0;
        for (double b : report.state_bounds) biggest = std::max(biggest, b);
        const double inflation = 1e-6 * biggest;
        try {
            report.gains.gains = secant_gains(config.model, report.state_bounds, inflation);
            report.gains.iofp_gain = iofp_gain(report.gains.gains, false);
            report.gains.iofp_gain_secant = iofp_gain(report.gains.gains, true);
            report.gains.state_bounds = report.state_bounds;
            report.gains.output_bound = config.model.block(0).output.value(report.state_bounds[0]);
            report.gains.inflation = inflation;
            report.gains_defined = true;
        } catch (const AnalysisError& e) {
            report.gains_note = e.what();
        }
    }

    const auto structure = graph_structure(config.graph);
    report.balanced = structure.balanced;
    report.strongly_connected = structure.strongly_connected;
    report.graph_norm = max_norm(laplacian(config.graph));
    if (config.graph.size() >= 2 && structure.balanced && structure.strongly_connected) {
        report.lambda2 = lambda2(config.graph);
        report.lambda2_defined = true;
    }

    if (report.gains_defined && report.lambda2_defined && config.protocol.type == "saturated") {
        report.threshold_attempted = true;
        if (report.gains.iofp_gain <= 0.0) {
            report.threshold = ThresholdResult{0.0, 0.0, report.gains.iofp_gain, true};
        } else {
            report.threshold = min_coupling_gain(
                report.gains.iofp_gain, report.lambda2, report.graph_norm,
                report.gains.output_bound,
                KineticFunction(SaturatingCoupling{config.protocol.M0, config.protocol.rho}));
        }
    }
    return report;
}

std::string AnalyzeReport::render() const {
    std::ostringstream out;
    out << "== goodwin-sync analyze ==\n";
    out << "model: " << model_name << " (" << block_count << " blocks, " << state_dim
        << " states)\n";
    out << "protocol: " << protocol_type;
    if (protocol_type == "saturated") {
        out << " (M0=" << num(protocol_M0) << ", rho=" << num(protocol_rho) << ")";
    }
    out << "\n";
    out << "feedback magnitude M_n = " << num(feedback_magnitude) << "\n";

    if (!input_bound_known) {
        out << "input bound: none under the linear protocol; the ultimate-bound\n"
               "recursion needs inputs confined to [0, M0], so the bound-based\n"
               "analysis is not applicable to this configuration.\n";
    } else {
        out << "input bound M0 = " << num(input_bound) << ", combined M = M0 + M_n = "
            << num(total_bound) << "\n";
        if (bounds_defined) {
            out << "ultimate bounds:";
            for (std::size_t i = 0; i < state_bounds.size(); ++i) {
                out << " x" << (i + 1) << " <= " << num(state_bounds[i]);
            }
            out << "\n";
        } else {
            out << "ultimate bounds: UNDEFINED at block " << failing_block
                << " -- the recursion needs the loss inverse at " << num(failing_value)
                << ", but the loss map saturates at " << num(failing_sup)
                << "; the bound-based analysis does not apply to this model.\n";
        }
    }

    if (gains_defined) {
        out << "secant gains:";
        for (std::size_t i = 0; i < gains.gains.size(); ++i) {
            out << " gamma" << (i + 1) << "=" << num(gains.gains[i]);
        }
        out << "\n";
        out << "chain gain k = " << num(gains.iofp_gain)
            << " (secant-weighted " << num(gains.iofp_gain_secant) << ")\n";
        out << "output bound y* = " << num(gains.output_bound)
            << " (box inflation " << num(gains.inflation) << ")\n";
    } else if (!gains_note.empty()) {
        out << "secant gains: " << gains_note << "\n";
    }

    out << "graph: N=" << n_oscillators << (balanced ? ", balanced" : ", NOT balanced")
        << (strongly_connected ? ", strongly connected" : ", NOT strongly connected");
    if (lambda2_defined) out << "; lambda2 = " << num(lambda2);
    out << "; max norm = " << num(graph_norm) << "\n";

    if (threshold_attempted) {
        if (threshold.converged && threshold.c_min == 0.0) {
            out << "threshold: chain gain k <= 0, any coupling gain (or none) suffices; "
                   "c_min = 0\n";
        } else if (threshold.converged) {
            out << "threshold: c_min = " << num(threshold.c_min) << " with LHS "
                << num(threshold.lhs_at_c) << " > k = " << num(threshold.rhs) << "\n";
        } else {
            out << "threshold: NOT attainable; the criterion LHS peaks at "
                << num(threshold.lhs_at_c) << " which never exceeds k = " << num(threshold.rhs)
                << "\n";
        }
    }

    out << "-- report --\n";
    out << "analyze.model=" << model_name << "\n";
    out << "analyze.blocks=" << block_count << "\n";
    out << "analyze.state_dim=" << state_dim << "\n";
    out << "analyze.protocol=" << protocol_type << "\n";
    out << "feedback.magnitude=" << num(feedback_magnitude) << "\n";
    out << "bounds.input_bound_known=" << (input_bound_known ? "true" : "false") << "\n";
    if (input_bound_known) {
        out << "bounds.M0=" << num(input_bound) << "\n";
        out << "bounds.M=" << num(total_bound) << "\n";
    }
    out << "bounds.defined=" << (bounds_defined ? "true" : "false") << "\n";
    if (bounds_defined) {
        for (std::size_t i = 0; i < state_bounds.size(); ++i) {
            out << "bounds.x_bar." << (i + 1) << "=" << num(state_bounds[i]) << "\n";
        }
    } else if (input_bound_known) {
        out << "bounds.failing_block=" << failing_block << "\n";
        out << "bounds.failing_value=" << num(failing_value) << "\n";
        out << "bounds.failing_sup=" << num(failing_sup) << "\n";
    }
    out << "gains.defined=" << (gains_defined ? "true" : "false") << "\n";
    if (gains_defined) {
        for (std::size_t i = 0; i < gains.gains.size(); ++i) {
            out << "gains.gamma." << (i + 1) << "=" << num(gains.gains[i]) << "\n";
        }
        out << "gains.iofp=" << num(gains.iofp_gain) << "\n";
        out << "gains.iofp_secant=" << num(gains.iofp_gain_secant) << "\n";
        out << "gains.output_bound=" << num(gains.output_bound) << "\n";
        out << "gains.inflation=" << num(gains.inflation) << "\n";
    }
    out << "graph.N=" << n_oscillators << "\n";
    out << "graph.balanced=" << (balanced ? "true" : "false") << "\n";
    out << "graph.strongly_connected=" << (strongly_connected ? "true" : "false") << "\n";
    if (lambda2_defined) out << "graph.lambda2=" << num(lambda2) << "\n";
    out << "graph.max_norm=" << num(graph_norm) << "\n";
    out << "threshold.attempted=" << (threshold_attempted ? "true" : "false") << "\n";
    if (threshold_attempted) {
        out << "threshold.converged=" << (threshold.converged ? "true" : "false") << "\n";
        out << "threshold.c_min=" << num(threshold.c_min) << "\n";
        out << "threshold.lhs=" << num(threshold.lhs_at_c) << "\n";
        out << "threshold.rhs=" << num(threshold.rhs) << "\n";
    }
    return out.str();
}

}  // namespace goodwin
