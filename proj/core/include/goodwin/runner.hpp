#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodwin/analysis.hpp"
#include "goodwin/scenario.hpp"

namespace goodwin {

/// Per-gain results of a simulation scenario.
struct RunResult {
    double c = 0.0;
    std::string csv_path;
    double sync_end = 0.0;         // worst pairwise state gap at t_end, nM
    double sync_rms_end = 0.0;
    double output_disagreement_end = 0.0;
    double input_min = 0.0;
    double input_max = 0.0;
    std::optional<double> period;  // of oscillator 1, state 1; absent if not oscillating
    std::string period_note;
};

struct SimulateOutcome {
    std::vector<RunResult> runs;
    std::string summary_path;
};

/// Run the scenario (all sweep gains, bounded worker pool; the environment
/// variable GOODWIN_SYNC_THREADS caps the pool). Writes one CSV per gain
/// (traj_c{gain}.csv) plus summary.txt into the output directory. Identical
/// config and seed give byte-identical files.
SimulateOutcome run_simulate(const ScenarioConfig& config);

/// Everything the certificate pipeline can say about a scenario. Inapplicable
/// stages are findings, not failures: the flags below record how far the
/// pipeline got.
struct AnalyzeReport {
    std::string model_name;
    int block_count = 0;
    int state_dim = 0;
    std::string protocol_type;
    double protocol_M0 = 0.0;
    double protocol_rho = 0.0;

    double feedback_magnitude = 0.0;  // M_n
    double input_bound = 0.0;         // M0 (0 when uncoupled)
    double total_bound = 0.0;         // M = M0 + M_n
    bool input_bound_known = false;   // false under the linear protocol

    bool bounds_defined = false;
    int failing_block = 0;  // 1-based, when bounds undefined
    double failing_value = 0.0;
    double failing_sup = 0.0;
    std::vector<double> state_bounds;

    bool gains_defined = false;
    std::string gains_note;
    GainReport gains;

    int n_oscillators = 0;
    bool balanced = false;
    bool strongly_connected = false;
    bool lambda2_defined = false;
    double lambda2 = 0.0;
    double graph_norm = 0.0;

    bool threshold_attempted = false;
    ThresholdResult threshold;

    /// Human-readable report followed by machine-readable key=value lines.
    std::string render() const;
};

AnalyzeReport run_analyze(const ScenarioConfig& config);

/// CSV export: header t,osc1_x1,...,oscN_x{d},u1,...,uN; one row per recorded
/// sample; 9 significant digits; LF line endings.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace goodwin
