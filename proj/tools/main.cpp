// goodwin-sync: simulate and analyze networks of diffusively coupled
// cyclic-feedback oscillators. Subcommands: simulate, analyze, check.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "goodwin/errors.hpp"
#include "goodwin/property_checks.hpp"
#include "goodwin/runner.hpp"
#include "goodwin/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ScenarioArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::vector<double> sweep;
    std::optional<long> seed;
};

goodwin::ScenarioConfig load_scenario(const ScenarioArgs& args) {
    if (!args.config_path.empty() && !args.preset.empty()) {
        throw goodwin::ConfigError("choose either --config or --preset, not both");
    }
    if (args.config_path.empty() && args.preset.empty()) {
        throw goodwin::ConfigError("need --config <path> or --preset <name>");
    }
    goodwin::ScenarioConfig config = args.config_path.empty()
                                         ? goodwin::scenario_preset(args.preset)
                                         : goodwin::scenario_from_file(args.config_path);
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (!args.sweep.empty()) config.sweep = args.sweep;
    if (args.seed) {
        if (*args.seed < 0) throw goodwin::ConfigError("--seed must be >= 0");
        config.sim.seed = static_cast<std::uint64_t>(*args.seed);
    }
    return config;
}

void add_scenario_flags(CLI::App* cmd, ScenarioArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (JSON)");
    cmd->add_option("--preset", args.preset, "built-in scenario preset");
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--sweep-c", args.sweep, "comma-separated coupling gains")->delimiter(',');
    cmd->add_option("--seed", args.seed, "override the simulation seed");
}

int do_simulate(const ScenarioArgs& args) {
    const auto config = load_scenario(args);
    const auto outcome = goodwin::run_simulate(config);
    for (const auto& run : outcome.runs) {
        std::printf("c=%-8g sync_end=%-12.6g u in [%.6g, %.6g]  %s\n", run.c, run.sync_end,
                    run.input_min, run.input_max, run.csv_path.c_str());
    }
    std::printf("summary: %s\n", outcome.summary_path.c_str());
    return kExitOk;
}

int do_analyze(const ScenarioArgs& args) {
    const auto config = load_scenario(args);
    const auto report = goodwin::run_analyze(config);
    std::cout << report.render();
    return kExitOk;
}

int do_check(std::uint64_t seed, double dt, bool list_only) {
    const auto& checks = goodwin::builtin_checks();
    if (list_only) {
        for (const auto& check : checks) {
            std::printf("%-26s %s\n", check.name.c_str(), check.summary.c_str());
        }
        return kExitOk;
    }
    goodwin::CheckOptions opts;
    opts.seed = seed;
    opts.dt = dt;
    bool all_passed = true;
    for (const auto& check : checks) {
        goodwin::CheckResult result;
        try {
            result = check.run(opts);
        } catch (const std::exception& e) {
            result = {false, e.what()};
        }
        all_passed = all_passed && result.passed;
        std::printf("[%s] %-26s %s\n", result.passed ? "PASS" : "FAIL", check.name.c_str(),
                    result.detail.c_str());
    }
    return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled cyclic-feedback oscillator networks: simulation and analysis"};
    app.require_subcommand(1);

    ScenarioArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write CSVs");
    add_scenario_flags(simulate, sim_args);

    ScenarioArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "run the certificate pipeline on a scenario");
    add_scenario_flags(analyze, analyze_args);

    long check_seed = 1;
    double check_dt = 0.01;
    bool check_list = false;
    auto* check = app.add_subcommand("check", "run the built-in property suite");
    check->add_option("--seed", check_seed, "seed for the randomized properties");
    check->add_option("--dt", check_dt, "integration step for the simulation-backed properties");
    check->add_flag("--list", check_list, "list properties without running them");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return do_simulate(sim_args);
        if (analyze->parsed()) return do_analyze(analyze_args);
        return do_check(static_cast<std::uint64_t>(check_seed), check_dt, check_list);
    } catch (const goodwin::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}
