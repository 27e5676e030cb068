#include "secidx/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace secidx {

using nlohmann::json;

namespace {

std::vector<double> parse_payload(const json& p, int horizon, const std::string& origin) {
    std::vector<double> out;
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "zero") {
        out.assign(horizon, 0.0);
    } else if (kind == "ramp") {
        const double scale = p.value("scale", 1.0);
        out.resize(horizon);
        for (int k = 0; k < horizon; ++k) out[k] = scale * k;
    } else if (kind == "step") {
        const double value = p.value("value", 1.0);
        const int at = p.value("at", 0);
        out.assign(horizon, 0.0);
        for (int k = std::max(at, 0); k < horizon; ++k) out[k] = value;
    } else if (kind == "samples") {
        for (const auto& v : p.at("values")) out.push_back(v.get<double>());
        out.resize(horizon, 0.0);
    } else {
        throw SchemaError(origin + ": unknown payload kind '" + kind + "'");
    }
    return out;
}

Eigen::VectorXd parse_vector(const json& arr, int n, const char* name,
                             const std::string& origin) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
        throw SchemaError(origin + ": '" + name + "' must list " + std::to_string(n) +
                          " numbers");
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = arr[i].get<double>();
    return v;
}

Eigen::MatrixXd parse_flat(const json& arr, int rows, int cols, const char* name,
                           const std::string& origin) {
    if (!arr.is_array() || arr.size() != static_cast<size_t>(rows) * cols)
        throw SchemaError(origin + ": believed field '" + std::string(name) +
                          "' must be a flat row-major array of " + std::to_string(rows * cols) +
                          " numbers");
    Eigen::MatrixXd m(rows, cols);
    size_t k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = arr[k++].get<double>();
    return m;
}

}  // namespace

Scenario load_scenario_from_string(const std::string& text, const std::string& base_dir,
                                   const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(origin + ": " + e.what());
    }
    Scenario s;
    try {
        s.model_path = j.at("model").get<std::string>();
        std::filesystem::path p(s.model_path);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        LoadedModel loaded = load_model(p.string());
        if (!loaded.realization)
            throw ValidationError(origin + ": scenario model must carry a realization");
        s.model = loaded.model;
        s.realization = *loaded.realization;

        const std::string kind = j.at("policy").get<std::string>();
        if (kind == "type1") s.kind = PolicyKind::type1_feedforward;
        else if (kind == "type2") s.kind = PolicyKind::type2_local_feedback;
        else if (kind == "type3") s.kind = PolicyKind::type3_replay;
        else throw SchemaError(origin + ": unknown policy '" + kind + "'");

        const auto& att = j.at("attacked");
        const json att_actuators = att.value("actuators", json::array());
        const json att_sensors = att.value("sensors", json::array());
        for (const auto& v : att_actuators) s.attacked.actuators.push_back(v.get<int>());
        for (const auto& v : att_sensors) s.attacked.sensors.push_back(v.get<int>());
        std::sort(s.attacked.actuators.begin(), s.attacked.actuators.end());
        std::sort(s.attacked.sensors.begin(), s.attacked.sensors.end());
        s.active_actuator = j.at("active_actuator").get<int>();
        s.horizon = j.value("horizon", 50);
        if (s.horizon <= 0) throw SchemaError(origin + ": horizon must be positive");
        s.k_start = j.value("k_start", 0);
        s.warmup_steps = j.value("warmup_steps", 20);
        s.payload = parse_payload(j.at("payload"), s.horizon, origin);

        s.x0 = parse_vector(j.at("x0"), s.model.n_x, "x0", origin);
        s.u0 = parse_vector(j.at("u0"), s.model.n_u(), "u0", origin);
        const json changes = j.value("u_changes", json::array());
        for (const auto& ch : changes) {
            InputChange c{ch.at("k").get<int>(), ch.at("input").get<int>(),
                          ch.at("delta").get<double>()};
            if (c.input < 0 || c.input >= s.model.n_u())
                throw SchemaError(origin + ": u_changes input out of range");
            s.u_changes.push_back(c);
        }
        if (j.contains("believed")) {
            const auto& bj = j["believed"];
            Realization b;
            b.a = parse_flat(bj.at("a"), s.model.n_x, s.model.n_x, "a", origin);
            b.b = parse_flat(bj.at("b"), s.model.n_x, s.model.n_u(), "b", origin);
            b.c = parse_flat(bj.at("c"), s.model.n_sensors(), s.model.n_x, "c", origin);
            b.n_y = s.model.n_y();
            s.believed = std::move(b);
        }
    } catch (const json::exception& e) {
        throw SchemaError(origin + ": " + e.what());
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario_from_string(ss.str(),
                                     std::filesystem::path(path).parent_path().string(), path);
}

Eigen::MatrixXd operator_inputs(const Scenario& s) {
    Eigen::MatrixXd u = constant_input(s.u0, s.horizon);
    for (const auto& ch : s.u_changes)
        for (int k = std::max(ch.k, 0); k < s.horizon; ++k) u(ch.input, k) += ch.delta;
    return u;
}

AttackTrace run_scenario(const Scenario& s) {
    AttackPolicy policy;
    switch (s.kind) {
        case PolicyKind::type1_feedforward: {
            const Realization& believed = s.believed ? *s.believed : s.realization;
            // Padded so the feedforward covers the whole run past k_start.
            std::vector<double> padded = s.payload;
            padded.resize(s.horizon, 0.0);
            policy = synth_type1(s.model, believed, s.attacked, s.active_actuator, padded);
            policy.k_start = s.k_start;
            break;
        }
        case PolicyKind::type2_local_feedback:
            policy = synth_type2(s.model, s.attacked, s.active_actuator, s.payload, s.k_start);
            break;
        case PolicyKind::type3_replay: {
            std::vector<double> recorded = warmup_record(
                s.realization, s.x0, constant_input(s.u0, s.warmup_steps), s.attacked.sensors,
                s.warmup_steps);
            policy = synth_type3(s.model, s.attacked, s.active_actuator, s.payload, recorded,
                                 s.k_start);
            break;
        }
    }
    return simulate(s.realization, policy, s.x0, operator_inputs(s), s.horizon);
}

}  // namespace secidx
