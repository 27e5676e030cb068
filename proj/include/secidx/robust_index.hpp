#pragma once

#include <cstdint>
#include <vector>

#include "secidx/model.hpp"

namespace secidx {

/// Directed graph G_t over actuators, states, sensors plus a global sink t.
struct ExtendedGraph {
    StructuralModel model;
    std::vector<std::pair<int, int>> e_ux;  // (actuator j, state i)
    std::vector<std::pair<int, int>> e_xx;  // (state j, state i), includes self-loops
    std::vector<std::pair<int, int>> e_xy;  // (state j, sensor i); every sensor feeds t

    /// States reachable from u_i along state edges, skipping `removed_states`;
    /// `removed_sensors` additionally blocks sensor nodes on the way to t.
    bool separates(int u_i, const std::vector<int>& removed_states,
                   const std::vector<int>& removed_sensors) const;
    std::vector<int> reachable_states(int u_i, const std::vector<int>& removed_states) const;
};

ExtendedGraph build_extended_graph(const StructuralModel& m);

/// Per-actuator min-cut network: Type-1 states (adjacent to another actuator)
/// are split into in/out halves joined by a unit arc; everything else carries
/// an infinite sentinel capacity except the measurement arcs into t.
struct FlowNetwork {
    enum class ArcKind { source_out, state_state, split_internal, to_sink };
    struct Arc {
        int from = 0, to = 0;
        long long cap = 0;
        bool infinite = false;
        ArcKind kind = ArcKind::state_state;
        int state = -1;  // associated state for split_internal / to_sink arcs
    };
    int n_nodes = 0;
    int source = 0;
    int sink = 1;
    std::vector<Arc> arcs;
    long long sentinel = 0;  // strictly exceeds the sum of finite capacities
    std::vector<bool> type1;          // per state
    std::vector<int> node_in, node_out;  // per state (equal for Type-2)
};

FlowNetwork build_flow_network(const ExtendedGraph& g, int u_i);

struct MaxFlowResult {
    bool infinite = false;
    long long value = 0;
    std::vector<int> cut;  // arc indices crossing the source-side partition
};

/// Shortest-augmenting-path max flow; the returned cut is the one nearest the
/// source (residual reachability), so results are deterministic.
MaxFlowResult max_flow(const FlowNetwork& net);

struct RobustValue {
    bool infinite = false;
    int value = 0;
    bool operator==(const RobustValue&) const = default;
};

struct RobustReport {
    int actuator = 0;
    RobustValue value;
    ComponentSet witness;                // contains u_i when finite
    std::vector<int> separator_states;   // X_a
    std::vector<int> separator_sensors;  // Y_a
};

RobustReport delta_r(const StructuralModel& m, int u_i);
std::vector<RobustReport> delta_r_all(const StructuralModel& m);

/// Brute-force minimum over all Problem-2-feasible sets; ground truth for the
/// max-flow path. Guarded to n_u + n_y + n_e <= 16.
RobustValue delta_r_oracle(const StructuralModel& m, int u_i);

}  // namespace secidx
