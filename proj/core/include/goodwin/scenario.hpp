#pragma once

#include <string>
#include <vector>

#include "goodwin/graph.hpp"
#include "goodwin/netsim.hpp"
#include "goodwin/oscillator.hpp"

namespace goodwin {

/// Protocol description kept in spec form so sweeps can rebuild it per gain.
struct ProtocolSpec {
    std::string type = "none";  // none | linear | saturated
    double c = 0.0;
    double M0 = 0.0005;
    double rho = 0.9;

    Protocol build(double gain) const;
    Protocol build() const { return build(c); }
};

/// A full scenario: model, graph, protocol, integration settings, outputs and
/// an optional sweep over coupling gains.
struct ScenarioConfig {
    CfsModel model;
    CouplingGraph graph;
    ProtocolSpec protocol;
    SimConfig sim;
    std::string model_name;  // preset name or "custom", for reports
    std::string output_dir = "out";
    std::vector<double> sweep;  // empty: single run at protocol.c
};

/// Parse a scenario from a JSON document. Every field has a documented
/// default; unknown fields are a hard error (no silent typo absorption).
/// Throws ConfigError with the offending path.
ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig scenario_from_file(const std::string& path);

/// Built-in scenarios: "gonze-fig" (the N=10 all-to-all reproduction sweep),
/// "linear-goodwin" (a chain where the whole certificate pipeline applies),
/// "linear-goodwin-damped" (strong leading damping, chain gain <= 0).
ScenarioConfig scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

/// Model presets by the same names plus "gonze2005".
CfsModel model_preset(const std::string& name);

}  // namespace goodwin
