#include "goodwin/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "goodwin/errors.hpp"

namespace goodwin {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

void expect_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(path + ": unknown field \"" + item.key() + "\"");
        }
    }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

long get_integer(const json& obj, const std::string& path, const char* key, long fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return v.get<long>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

KineticFunction kinetic_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    const std::string type = get_string(j, path, "type", "");
    if (type == "linear") {
        expect_keys(j, path, {"type", "slope"});
        return KineticFunction(Linear{get_number(j, path, "slope", 1.0)});
    }
    if (type == "identity") {
        expect_keys(j, path, {"type"});
        return KineticFunction(Identity{});
    }
    if (type == "michaelis_menten") {
        expect_keys(j, path, {"type", "vmax", "K"});
        return KineticFunction(
            MichaelisMenten{get_number(j, path, "vmax", 1.0), get_number(j, path, "K", 1.0)});
    }
    if (type == "hill_inhibition") {
        expect_keys(j, path, {"type", "v1", "K1", "p"});
        return KineticFunction(HillInhibition{get_number(j, path, "v1", 1.0),
                                              get_number(j, path, "K1", 1.0),
                                              get_number(j, path, "p", 1.0)});
    }
    if (type == "saturating_coupling") {
        expect_keys(j, path, {"type", "M0", "rho"});
        return KineticFunction(SaturatingCoupling{get_number(j, path, "M0", 0.0005),
                                                  get_number(j, path, "rho", 0.9)});
    }
    if (type == "affine") {
        expect_keys(j, path, {"type", "slope", "offset"});
        return KineticFunction(
            Affine{get_number(j, path, "slope", 1.0), get_number(j, path, "offset", 0.0)});
    }
    throw ConfigError(path + ".type: unknown kinetic variant \"" + type + "\"");
}

GonzeParams gonze_overrides(const json& obj, const std::string& path) {
    expect_keys(obj, path,
                {"nu1", "K1", "hill_exponent", "nu2", "K2", "k3", "nu4", "K4", "k5", "nu6", "K6"});
    GonzeParams p;
    p.nu1 = get_number(obj, path, "nu1", p.nu1);
    p.K1 = get_number(obj, path, "K1", p.K1);
    p.hill_exponent = get_number(obj, path, "hill_exponent", p.hill_exponent);
    p.nu2 = get_number(obj, path, "nu2", p.nu2);
    p.K2 = get_number(obj, path, "K2", p.K2);
    p.k3 = get_number(obj, path, "k3", p.k3);
    p.nu4 = get_number(obj, path, "nu4", p.nu4);
    p.K4 = get_number(obj, path, "K4", p.K4);
    p.k5 = get_number(obj, path, "k5", p.k5);
    p.nu6 = get_number(obj, path, "nu6", p.nu6);
    p.K6 = get_number(obj, path, "K6", p.K6);
    return p;
}

CfsModel model_from_json(const json& j) {
    const std::string path = "model";
    expect_object(j, path);
    expect_keys(j, path, {"preset", "overrides", "custom"});
    if (j.contains("custom")) {
        if (j.contains("preset") || j.contains("overrides")) {
            throw ConfigError("model: \"custom\" excludes \"preset\"/\"overrides\"");
        }
        const json& c = j.at("custom");
        expect_object(c, "model.custom");
        expect_keys(c, "model.custom", {"blocks", "feedback"});
        if (!c.contains("blocks") || !c.at("blocks").is_array() || c.at("blocks").empty()) {
            throw ConfigError("model.custom.blocks: expected a nonempty array");
        }
        if (!c.contains("feedback")) {
            throw ConfigError("model.custom.feedback: required");
        }
        std::vector<DynamicBlock> blocks;
        int index = 0;
        for (const json& b : c.at("blocks")) {
            const std::string bpath = "model.custom.blocks[" + std::to_string(index++) + "]";
            expect_object(b, bpath);
            expect_keys(b, bpath, {"f", "g"});
            if (!b.contains("f") || !b.contains("g")) {
                throw ConfigError(bpath + ": need both \"f\" and \"g\"");
            }
            blocks.push_back({kinetic_from_json(b.at("f"), bpath + ".f"),
                              kinetic_from_json(b.at("g"), bpath + ".g")});
        }
        return CfsModel(std::move(blocks),
                        kinetic_from_json(c.at("feedback"), "model.custom.feedback"));
    }
    const std::string preset = get_string(j, path, "preset", "gonze2005");
    if (preset == "gonze2005") {
        GonzeParams p;
        if (j.contains("overrides")) {
            expect_object(j.at("overrides"), "model.overrides");
            p = gonze_overrides(j.at("overrides"), "model.overrides");
        }
        return gonze_model(p);
    }
    if (j.contains("overrides")) {
        throw ConfigError("model.overrides: only supported for the gonze2005 preset");
    }
    return model_preset(preset);
}

CouplingGraph graph_from_json(const json& j) {
    const std::string path = "graph";
    expect_object(j, path);
    const std::string type = get_string(j, path, "type", "complete");
    if (type == "complete" || type == "ring") {
        expect_keys(j, path, {"type", "N", "weight"});
        const long n = get_integer(j, path, "N", 10);
        const double w = get_number(j, path, "weight", 1.0);
        return type == "complete" ? CouplingGraph::complete(static_cast<int>(n), w)
                                  : CouplingGraph::ring(static_cast<int>(n), w);
    }
    if (type == "custom") {
        expect_keys(j, path, {"type", "weights"});
        if (!j.contains("weights") || !j.at("weights").is_array()) {
            throw ConfigError("graph.weights: expected an array of rows");
        }
        const json& rows = j.at("weights");
        const int n = static_cast<int>(rows.size());
        Matrix w(n, n);
        for (int r = 0; r < n; ++r) {
            const json& row = rows.at(static_cast<std::size_t>(r));
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                throw ConfigError("graph.weights: row " + std::to_string(r) +
                                  " must have exactly N entries");
            }
            for (int c = 0; c < n; ++c) {
                const json& v = row.at(static_cast<std::size_t>(c));
                if (!v.is_number()) {
                    throw ConfigError("graph.weights[" + std::to_string(r) + "][" +
                                      std::to_string(c) + "]: expected a number");
                }
                w(r, c) = v.get<double>();
            }
        }
        return CouplingGraph::from_weights(std::move(w));
    }
    throw ConfigError("graph.type: unknown type \"" + type + "\"");
}

ProtocolSpec protocol_from_json(const json& j) {
    const std::string path = "protocol";
    expect_object(j, path);
    ProtocolSpec spec;
    spec.type = get_string(j, path, "type", "none");
    if (spec.type == "none") {
        expect_keys(j, path, {"type"});
    } else if (spec.type == "linear") {
        expect_keys(j, path, {"type", "c"});
        spec.c = get_number(j, path, "c", 1.0);
    } else if (spec.type == "saturated") {
        expect_keys(j, path, {"type", "c", "M0", "rho"});
        spec.c = get_number(j, path, "c", 1.0);
        spec.M0 = get_number(j, path, "M0", spec.M0);
        spec.rho = get_number(j, path, "rho", spec.rho);
    } else {
        throw ConfigError("protocol.type: unknown type \"" + spec.type + "\"");
    }
    if (spec.c < 0.0) throw ConfigError("protocol.c: must be >= 0");
    return spec;
}

InitialSpec initial_from_json(const json& j, int state_dim) {
    const std::string path = "sim.initial";
    expect_object(j, path);
    const std::string type = get_string(j, path, "type", "uniform");
    InitialSpec spec;
    if (type == "uniform") {
        expect_keys(j, path, {"type", "lo", "hi", "ranges"});
        if (j.contains("ranges")) {
            if (j.contains("lo") || j.contains("hi")) {
                throw ConfigError(path + ": \"ranges\" excludes \"lo\"/\"hi\"");
            }
            spec.ranges.clear();
            for (const json& r : j.at("ranges")) {
                if (!r.is_array() || r.size() != 2) {
                    throw ConfigError(path + ".ranges: each entry must be [lo, hi]");
                }
                spec.ranges.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
            }
            if (static_cast<int>(spec.ranges.size()) != state_dim && spec.ranges.size() != 1) {
                throw ConfigError(path + ".ranges: need one interval or one per state");
            }
        } else {
            const double lo = get_number(j, path, "lo", 0.5);
            const double hi = get_number(j, path, "hi", 1.5);
            spec.ranges = {Interval{lo, hi}};
        }
        return spec;
    }
    if (type == "explicit") {
        expect_keys(j, path, {"type", "states"});
        if (!j.contains("states") || !j.at("states").is_array()) {
            throw ConfigError(path + ".states: expected an array of per-oscillator rows");
        }
        for (const json& row : j.at("states")) {
            if (!row.is_array()) throw ConfigError(path + ".states: rows must be arrays");
            std::vector<double> r;
            for (const json& v : row) r.push_back(v.get<double>());
            spec.states.push_back(std::move(r));
        }
        spec.ranges.clear();
        return spec;
    }
    throw ConfigError(path + ".type: unknown type \"" + type + "\"");
}

SimConfig sim_from_json(const json& j, int state_dim) {
    const std::string path = "sim";
    expect_object(j, path);
    expect_keys(j, path,
                {"t_end", "dt", "method", "rel_tol", "abs_tol", "record_stride", "seed",
                 "initial"});
    SimConfig cfg;
    cfg.t_end = get_number(j, path, "t_end", cfg.t_end);
    cfg.dt = get_number(j, path, "dt", cfg.dt);
    const std::string method = get_string(j, path, "method", "rk4");
    if (method == "rk4") {
        cfg.method = Integrator::Rk4;
    } else if (method == "rkf45") {
        cfg.method = Integrator::Rkf45;
    } else {
        throw ConfigError("sim.method: unknown integrator \"" + method + "\"");
    }
    cfg.rel_tol = get_number(j, path, "rel_tol", cfg.rel_tol);
    cfg.abs_tol = get_number(j, path, "abs_tol", cfg.abs_tol);
    cfg.record_stride = static_cast<int>(get_integer(j, path, "record_stride", cfg.record_stride));
    const long seed = get_integer(j, path, "seed", static_cast<long>(cfg.seed));
    if (seed < 0) throw ConfigError("sim.seed: must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
    if (j.contains("initial")) cfg.initial = initial_from_json(j.at("initial"), state_dim);
    if (!(cfg.dt > 0.0)) throw ConfigError("sim.dt: must be > 0");
    if (!(cfg.t_end > 0.0)) throw ConfigError("sim.t_end: must be > 0");
    if (cfg.record_stride < 1) throw ConfigError("sim.record_stride: must be >= 1");
    return cfg;
}

std::vector<double> sweep_from_json(const json& j) {
    expect_object(j, "sweep");
    expect_keys(j, "sweep", {"c"});
    if (!j.contains("c") || !j.at("c").is_array()) {
        throw ConfigError("sweep.c: expected an array of gains");
    }
    std::vector<double> sweep;
    for (const json& v : j.at("c")) {
        if (!v.is_number()) throw ConfigError("sweep.c: entries must be numbers");
        sweep.push_back(v.get<double>());
    }
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (sweep[i] < 0.0) throw ConfigError("sweep.c: gains must be >= 0");
        for (std::size_t k = i + 1; k < sweep.size(); ++k) {
            if (sweep[i] == sweep[k]) throw ConfigError("sweep.c: gains must be distinct");
        }
    }
    return sweep;
}

ScenarioConfig scenario_from_json(const json& root) {
    expect_object(root, "config");
    expect_keys(root, "config", {"model", "graph", "protocol", "sim", "output", "sweep"});

    CfsModel model =
        root.contains("model") ? model_from_json(root.at("model")) : gonze_model(GonzeParams{});
    std::string model_name = "custom";
    if (!root.contains("model")) {
        model_name = "gonze2005";
    } else if (root.at("model").is_object() && !root.at("model").contains("custom")) {
        model_name = get_string(root.at("model"), "model", "preset", "gonze2005");
    }

    CouplingGraph graph = root.contains("graph") ? graph_from_json(root.at("graph"))
                                                 : CouplingGraph::complete(10, 1.0);
    ProtocolSpec protocol =
        root.contains("protocol") ? protocol_from_json(root.at("protocol")) : ProtocolSpec{};

    SimConfig sim;
    if (root.contains("sim")) sim = sim_from_json(root.at("sim"), model.state_dim());

    std::string output_dir = "out";
    if (root.contains("output")) {
        expect_object(root.at("output"), "output");
        expect_keys(root.at("output"), "output", {"dir"});
        output_dir = get_string(root.at("output"), "output", "dir", output_dir);
    }

    std::vector<double> sweep;
    if (root.contains("sweep")) sweep = sweep_from_json(root.at("sweep"));

    return ScenarioConfig{std::move(model), std::move(graph), protocol, sim,
                          std::move(model_name), std::move(output_dir), std::move(sweep)};
}

}  // namespace

Protocol ProtocolSpec::build(double gain) const {
    if (type == "none") return Protocol::none();
    if (type == "linear") return Protocol::linear(gain);
    if (type == "saturated") return Protocol::saturated(gain, M0, rho);
    throw ConfigError("protocol.type: unknown type \"" + type + "\"");
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    return scenario_from_json(root);
}

ScenarioConfig scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str());
}

CfsModel model_preset(const std::string& name) {
    if (name == "gonze2005") return gonze_model(GonzeParams{});
    if (name == "linear-goodwin") {
        std::vector<DynamicBlock> blocks;
        blocks.push_back({KineticFunction(Linear{1.0}), KineticFunction(Linear{1.0})});
        blocks.push_back({KineticFunction(Linear{1.0}), KineticFunction(Linear{1.0})});
        blocks.push_back({KineticFunction(Linear{1.0}), KineticFunction(Identity{})});
        return CfsModel(std::move(blocks), KineticFunction(HillInhibition{1.55, 1.0, 2.0}));
    }
    if (name == "linear-goodwin-damped") {
        std::vector<DynamicBlock> blocks;
        blocks.push_back({KineticFunction(Linear{10.0}), KineticFunction(Linear{1.0})});
        blocks.push_back({KineticFunction(Linear{1.0}), KineticFunction(Linear{1.0})});
        blocks.push_back({KineticFunction(Linear{1.0}), KineticFunction(Identity{})});
        return CfsModel(std::move(blocks), KineticFunction(HillInhibition{0.5, 1.0, 2.0}));
    }
    throw ConfigError("model preset: unknown name \"" + name + "\"");
}

std::vector<std::string> scenario_preset_names() {
    return {"gonze-fig", "linear-goodwin", "linear-goodwin-damped"};
}

ScenarioConfig scenario_preset(const std::string& name) {
    if (name == "gonze-fig") {
        SimConfig sim;
        sim.t_end = 600.0;
        sim.dt = 0.01;
        sim.record_stride = 10;
        sim.seed = 1;
        sim.initial.ranges = {Interval{0.5, 1.5}};
        ProtocolSpec protocol{"saturated", 1.0, 0.0005, 0.9};
        return ScenarioConfig{gonze_model(GonzeParams{}),
                              CouplingGraph::complete(10, 1.0),
                              protocol,
                              sim,
                              "gonze2005",
                              "out",
                              {0.0, 1.0, 10.0, 100.0}};
    }
    if (name == "linear-goodwin" || name == "linear-goodwin-damped") {
        SimConfig sim;
        sim.t_end = 200.0;
        sim.dt = 0.01;
        sim.record_stride = 10;
        sim.seed = 1;
        sim.initial.ranges = {Interval{0.5, 1.5}};
        ProtocolSpec protocol{"saturated", 1.0, 0.3, 0.9};
        return ScenarioConfig{model_preset(name), CouplingGraph::complete(4, 1.0),
                              protocol,           sim,
                              name,               "out",
                              {}};
    }
    std::string known;
    for (const auto& preset : scenario_preset_names()) {
        known += (known.empty() ? "" : ", ") + preset;
    }
    throw ConfigError("scenario preset: unknown name \"" + name + "\" (available: " + known + ")");
}

}  // namespace goodwin
