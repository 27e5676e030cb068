#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secidx/attack.hpp"

namespace secidx {

/// One input edit applied by the operator mid-run: u(input) += delta for all
/// steps k' >= k.
struct InputChange {
    int k = 0;
    int input = 0;
    double delta = 0.0;
};

/// Declarative description of a single attack run: which model, which policy
/// family, the attacked set, the free payload, and the operator's side of the
/// experiment.
struct Scenario {
    std::string model_path;  // resolved relative to the scenario file
    StructuralModel model;
    Realization realization;  // true plant

    PolicyKind kind = PolicyKind::type1_feedforward;
    ComponentSet attacked;
    int active_actuator = 0;
    std::vector<double> payload;  // sampled a^{(u_i)}, one entry per step
    int k_start = 0;
    int horizon = 50;
    int warmup_steps = 20;  // replay recording length

    Eigen::VectorXd x0;
    Eigen::VectorXd u0;
    std::vector<InputChange> u_changes;

    // Type-1 attacker's model of the plant; defaults to the true realization.
    std::optional<Realization> believed;
};

Scenario load_scenario(const std::string& path);
Scenario load_scenario_from_string(const std::string& text, const std::string& base_dir,
                                   const std::string& origin = "<string>");

/// Operator input sequence with all changes applied.
Eigen::MatrixXd operator_inputs(const Scenario& s);

/// Builds the policy (including Type-3 warm-up recording) and runs it.
AttackTrace run_scenario(const Scenario& s);

}  // namespace secidx
