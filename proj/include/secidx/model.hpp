#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secidx/errors.hpp"

namespace secidx {

struct SensorSpec {
    int target = 0;            // state measured by this sensor
    bool is_protected = false; // protected sensors form a suffix of the list
};

/// Binary sparsity patterns of the plant plus actuator/sensor incidence.
/// Each actuator drives exactly one state and each sensor measures exactly
/// one state; two actuators may not share a target state.
struct StructuralModel {
    int n_x = 0;
    std::vector<int> actuator_target;  // size n_u, pairwise distinct
    std::vector<SensorSpec> sensors;   // unprotected first, protected last
    std::vector<std::uint8_t> a_pattern;  // n_x * n_x, row-major

    int n_u() const { return static_cast<int>(actuator_target.size()); }
    int n_sensors() const { return static_cast<int>(sensors.size()); }
    int n_y() const;  // unprotected sensor count
    int n_e() const { return n_sensors() - n_y(); }

    bool a(int i, int j) const { return a_pattern[static_cast<size_t>(i) * n_x + j] != 0; }
    void set_a(int i, int j, bool v) { a_pattern[static_cast<size_t>(i) * n_x + j] = v ? 1 : 0; }

    /// Throws ValidationError naming the failing invariant.
    void validate() const;
};

/// Numeric matrices consistent with a StructuralModel. n_y is carried so the
/// attack-input matrices can be assembled without the structural model.
struct Realization {
    Eigen::MatrixXd a;  // n_x x n_x
    Eigen::MatrixXd b;  // n_x x n_u
    Eigen::MatrixXd c;  // (n_y + n_e) x n_x
    int n_y = 0;

    int n_x() const { return static_cast<int>(a.rows()); }
    int n_u() const { return static_cast<int>(b.cols()); }
    int n_outputs() const { return static_cast<int>(c.rows()); }

    void validate_against(const StructuralModel& m) const;
};

/// Attacked actuators and (unprotected) sensors. Ids are 0-based model ids;
/// sensor ids index the unprotected prefix of the sensor list.
struct ComponentSet {
    std::vector<int> actuators;  // sorted, unique
    std::vector<int> sensors;    // sorted, unique

    int size() const { return static_cast<int>(actuators.size() + sensors.size()); }
    bool has_actuator(int i) const;
    bool has_sensor(int j) const;
};

struct LoadedModel {
    StructuralModel model;
    std::optional<Realization> realization;
};

LoadedModel load_model(const std::string& path);
LoadedModel load_model_from_string(const std::string& text, const std::string& origin = "<string>");

/// Canonical serialization; save(load(f)) round-trips modulo whitespace.
std::string model_to_string(const StructuralModel& m, const std::optional<Realization>& r);
void save_model(const std::string& path, const StructuralModel& m,
                const std::optional<Realization>& r);

/// FNV-1a over the canonical serialization, as a hex string.
std::string model_hash(const StructuralModel& m, const std::optional<Realization>& r);

/// Samples structural ones uniformly from [-1,1]; [B] entries avoid a +-0.05
/// dead-zone around zero so every realization keeps full column rank.
Realization random_realization(const StructuralModel& m, std::uint64_t seed);

StructuralModel add_sensor(const StructuralModel& m, int state, bool is_protected);
StructuralModel add_actuator(const StructuralModel& m, int state);

}  // namespace secidx
