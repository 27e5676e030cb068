#include "secidx/model.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace secidx {

using nlohmann::json;

int StructuralModel::n_y() const {
    int k = 0;
    for (const auto& s : sensors) {
        if (!s.is_protected) ++k;
    }
    return k;
}

void StructuralModel::validate() const {
    if (n_x <= 0) throw ValidationError("n_x must be positive");
    if (a_pattern.size() != static_cast<size_t>(n_x) * n_x)
        throw ValidationError("a_pattern size does not match n_x");
    std::vector<int> seen;
    for (int t : actuator_target) {
        if (t < 0 || t >= n_x) throw ValidationError("actuator target out of range");
        if (std::find(seen.begin(), seen.end(), t) != seen.end())
            throw ValidationError("B not full column rank: duplicate actuator target state");
        seen.push_back(t);
    }
    for (const auto& s : sensors) {
        if (s.target < 0 || s.target >= n_x) throw ValidationError("sensor target out of range");
    }
    // Protected sensors must be a suffix.
    bool hit_protected = false;
    for (const auto& s : sensors) {
        if (s.is_protected) hit_protected = true;
        else if (hit_protected)
            throw ValidationError("protected sensors must form a suffix of the sensor list");
    }
}

void Realization::validate_against(const StructuralModel& m) const {
    if (a.rows() != m.n_x || a.cols() != m.n_x)
        throw ValidationError("realization A has wrong dimensions");
    if (b.rows() != m.n_x || b.cols() != m.n_u())
        throw ValidationError("realization B has wrong dimensions");
    if (c.rows() != m.n_sensors() || c.cols() != m.n_x)
        throw ValidationError("realization C has wrong dimensions");
    if (n_y != m.n_y()) throw ValidationError("realization n_y mismatch");
    for (int i = 0; i < m.n_x; ++i)
        for (int j = 0; j < m.n_x; ++j)
            if (!m.a(i, j) && a(i, j) != 0.0)
                throw ValidationError("realization A nonzero at structural zero");
    for (int i = 0; i < m.n_x; ++i)
        for (int j = 0; j < m.n_u(); ++j) {
            bool one = (m.actuator_target[j] == i);
            if (!one && b(i, j) != 0.0)
                throw ValidationError("realization B nonzero at structural zero");
            if (one && b(i, j) == 0.0)
                throw ValidationError("realization B zero at structural one");
        }
    for (int l = 0; l < m.n_sensors(); ++l)
        for (int j = 0; j < m.n_x; ++j)
            if (m.sensors[l].target != j && c(l, j) != 0.0)
                throw ValidationError("realization C nonzero at structural zero");
}

bool ComponentSet::has_actuator(int i) const {
    return std::binary_search(actuators.begin(), actuators.end(), i);
}

bool ComponentSet::has_sensor(int j) const {
    return std::binary_search(sensors.begin(), sensors.end(), j);
}

namespace {

Eigen::MatrixXd parse_dense(const json& arr, int rows, int cols, const char* name) {
    if (!arr.is_array() || arr.size() != static_cast<size_t>(rows) * cols)
        throw SchemaError(std::string("realization field '") + name +
                          "' must be a flat row-major array of " +
                          std::to_string(rows * cols) + " numbers");
    Eigen::MatrixXd m(rows, cols);
    size_t k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = arr[k++].get<double>();
    return m;
}

json dense_to_json(const Eigen::MatrixXd& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
    return arr;
}

}  // namespace

LoadedModel load_model_from_string(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(origin + ": " + e.what());
    }
    LoadedModel out;
    try {
        StructuralModel& m = out.model;
        m.n_x = j.at("n_x").get<int>();
        if (m.n_x <= 0) throw SchemaError(origin + ": n_x must be positive");
        m.a_pattern.assign(static_cast<size_t>(m.n_x) * m.n_x, 0);
        for (const auto& e : j.at("a_pattern")) {
            int r = e.at(0).get<int>(), c = e.at(1).get<int>();
            if (r < 0 || r >= m.n_x || c < 0 || c >= m.n_x)
                throw SchemaError(origin + ": a_pattern index out of range");
            m.set_a(r, c, true);
        }
        for (const auto& e : j.at("actuators"))
            m.actuator_target.push_back(e.at("target").get<int>());
        for (const auto& e : j.at("sensors"))
            m.sensors.push_back({e.at("target").get<int>(), e.value("protected", false)});
        m.validate();
        if (j.contains("realization")) {
            const auto& rj = j["realization"];
            Realization r;
            r.a = parse_dense(rj.at("a"), m.n_x, m.n_x, "a");
            r.b = parse_dense(rj.at("b"), m.n_x, m.n_u(), "b");
            r.c = parse_dense(rj.at("c"), m.n_sensors(), m.n_x, "c");
            r.n_y = m.n_y();
            r.validate_against(m);
            out.realization = std::move(r);
        }
    } catch (const json::exception& e) {
        throw SchemaError(origin + ": " + e.what());
    }
    return out;
}

LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_model_from_string(ss.str(), path);
}

std::string model_to_string(const StructuralModel& m, const std::optional<Realization>& r) {
    json j;
    j["n_x"] = m.n_x;
    json acts = json::array();
    for (int t : m.actuator_target) acts.push_back({{"target", t}});
    j["actuators"] = acts;
    json sens = json::array();
    for (const auto& s : m.sensors)
        sens.push_back({{"protected", s.is_protected}, {"target", s.target}});
    j["sensors"] = sens;
    json pat = json::array();
    for (int i = 0; i < m.n_x; ++i)
        for (int k = 0; k < m.n_x; ++k)
            if (m.a(i, k)) pat.push_back({i, k});
    j["a_pattern"] = pat;
    if (r) {
        j["realization"] = {{"a", dense_to_json(r->a)},
                            {"b", dense_to_json(r->b)},
                            {"c", dense_to_json(r->c)}};
    }
    return j.dump(2) + "\n";
}

void save_model(const std::string& path, const StructuralModel& m,
                const std::optional<Realization>& r) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write model file: " + path);
    out << model_to_string(m, r);
}

std::string model_hash(const StructuralModel& m, const std::optional<Realization>& r) {
    std::string s = model_to_string(m, r);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Realization random_realization(const StructuralModel& m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> mag(0.05, 1.0);
    Realization r;
    r.n_y = m.n_y();
    r.a = Eigen::MatrixXd::Zero(m.n_x, m.n_x);
    r.b = Eigen::MatrixXd::Zero(m.n_x, m.n_u());
    r.c = Eigen::MatrixXd::Zero(m.n_sensors(), m.n_x);
    for (int i = 0; i < m.n_x; ++i)
        for (int j = 0; j < m.n_x; ++j)
            if (m.a(i, j)) r.a(i, j) = uni(rng);
    for (int j = 0; j < m.n_u(); ++j) {
        double v = mag(rng);
        r.b(m.actuator_target[j], j) = (rng() & 1) ? v : -v;
    }
    for (int l = 0; l < m.n_sensors(); ++l) r.c(l, m.sensors[l].target) = uni(rng);
    return r;
}

StructuralModel add_sensor(const StructuralModel& m, int state, bool is_protected) {
    if (state < 0 || state >= m.n_x) throw ValidationError("sensor state out of range");
    StructuralModel out = m;
    SensorSpec s{state, is_protected};
    if (is_protected) {
        out.sensors.push_back(s);
    } else {
        out.sensors.insert(out.sensors.begin() + m.n_y(), s);
    }
    return out;
}

StructuralModel add_actuator(const StructuralModel& m, int state) {
    if (state < 0 || state >= m.n_x) throw ValidationError("actuator state out of range");
    for (int t : m.actuator_target)
        if (t == state)
            throw ValidationError("B not full column rank: duplicate actuator target state");
    StructuralModel out = m;
    out.actuator_target.push_back(state);
    return out;
}

}  // namespace secidx
