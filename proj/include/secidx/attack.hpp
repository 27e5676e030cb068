#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secidx/model.hpp"

namespace secidx {

enum class PolicyKind { type1_feedforward, type2_local_feedback, type3_replay };

/// An attack program against one actuator plus cover components. Type-1
/// carries precomputed feedforward signals; Type-2 closes the loop on true
/// local states inside simulate(); Type-3 replays recorded sensor values.
struct AttackPolicy {
    PolicyKind kind = PolicyKind::type1_feedforward;
    ComponentSet attacked;
    int active_actuator = 0;
    std::vector<double> payload;  // a^{(u_i)}(k - k_start)
    int k_start = 0;

    // Type-1 only: additive attack signals per step, columns indexed by k.
    Eigen::MatrixXd ff_actuator;  // n_u x horizon
    Eigen::MatrixXd ff_sensor;    // n_sensors x horizon (additive on outputs)

    // Type-3 only: replayed value per attacked sensor (aligned with
    // attacked.sensors).
    std::vector<double> recorded;

    // Type-3: false when the attacked sensor set provably cannot guarantee
    // undetectability (a reachable sensor is uncovered or protected).
    bool guarantee_ok = true;
};

struct AttackTrace {
    int horizon = 0;
    Eigen::MatrixXd x;           // n_x x horizon, attacked-plant states
    Eigen::MatrixXd y_received;  // n_sensors x horizon
    Eigen::MatrixXd y_expected;  // operator's nominal prediction
    Eigen::MatrixXd residual;    // y_expected - y_received

    double max_residual() const;
    std::string to_csv() const;
};

/// Offline state-cancellation synthesis from the believed realization. The
/// attacked set's induced state/sensor set must be a vertex separator of u_i
/// and t unless allow_detection is set.
AttackPolicy synth_type1(const StructuralModel& m, const Realization& r_believed,
                         const ComponentSet& set, int i,
                         const std::vector<double>& payload,
                         bool allow_detection = false);

/// Local-feedback policy: covers are computed online from the true plant's
/// relevant rows; attacked sensors are held at their onset values. Refuses
/// non-separator sets.
AttackPolicy synth_type2(const StructuralModel& m, const ComponentSet& set, int i,
                         const std::vector<double>& payload, int k_start = 0);

/// Replay policy; `recorded` holds the steady output per attacked sensor.
AttackPolicy synth_type3(const StructuralModel& m, const ComponentSet& set, int i,
                         const std::vector<double>& payload,
                         const std::vector<double>& recorded, int k_start = 0);

/// Steps the true plant under operator inputs plus the attack; y_expected is
/// the attack-free run from the same x0 and inputs.
AttackTrace simulate(const Realization& r_true, const AttackPolicy& policy,
                     const Eigen::VectorXd& x0, const Eigen::MatrixXd& u_op,
                     int horizon);

/// Outputs after `steps` warm-up steps of the nominal plant; feed to
/// synth_type3 as the recorded steady values.
std::vector<double> warmup_record(const Realization& r, const Eigen::VectorXd& x0,
                                  const Eigen::MatrixXd& u_op,
                                  const std::vector<int>& sensors, int steps = 20);

/// Realization in which any attack on the path's actuator is visible at the
/// path's sensor: the first path state is driven by nothing else, each later
/// path state only by its predecessor.
Realization adversarial_realization(const StructuralModel& m, int actuator,
                                    const std::vector<int>& path_states, int sensor,
                                    std::uint64_t seed = 0);

/// Constant input replicated over the horizon.
Eigen::MatrixXd constant_input(const Eigen::VectorXd& u0, int horizon);

}  // namespace secidx
