#include "secidx/robust_index.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace secidx {

ExtendedGraph build_extended_graph(const StructuralModel& m) {
    m.validate();
    ExtendedGraph g;
    g.model = m;
    for (int j = 0; j < m.n_u(); ++j) g.e_ux.emplace_back(j, m.actuator_target[j]);
    for (int i = 0; i < m.n_x; ++i)
        for (int j = 0; j < m.n_x; ++j)
            if (m.a(i, j)) g.e_xx.emplace_back(j, i);
    for (int l = 0; l < m.n_sensors(); ++l) g.e_xy.emplace_back(m.sensors[l].target, l);
    return g;
}

std::vector<int> ExtendedGraph::reachable_states(int u_i,
                                                 const std::vector<int>& removed_states) const {
    std::vector<bool> removed(model.n_x, false);
    for (int s : removed_states) removed[s] = true;
    std::vector<bool> seen(model.n_x, false);
    std::deque<int> queue;
    int root = model.actuator_target[u_i];
    if (!removed[root]) {
        seen[root] = true;
        queue.push_back(root);
    }
    // forward adjacency over state edges
    std::vector<std::vector<int>> adj(model.n_x);
    for (auto [from, to] : e_xx)
        if (from != to) adj[from].push_back(to);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (!removed[w] && !seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
    }
    std::vector<int> out;
    for (int s = 0; s < model.n_x; ++s)
        if (seen[s]) out.push_back(s);
    return out;
}

bool ExtendedGraph::separates(int u_i, const std::vector<int>& removed_states,
                              const std::vector<int>& removed_sensors) const {
    std::vector<bool> sensor_removed(model.n_sensors(), false);
    for (int l : removed_sensors) sensor_removed[l] = true;
    for (int s : reachable_states(u_i, removed_states))
        for (int l = 0; l < model.n_sensors(); ++l)
            if (model.sensors[l].target == s && !sensor_removed[l]) return false;  // s -> y_l -> t
    return true;
}

FlowNetwork build_flow_network(const ExtendedGraph& g, int u_i) {
    const StructuralModel& m = g.model;
    if (u_i < 0 || u_i >= m.n_u()) throw ValidationError("actuator id out of range");

    FlowNetwork net;
    net.type1.assign(m.n_x, false);
    for (int j = 0; j < m.n_u(); ++j)
        if (j != u_i) net.type1[m.actuator_target[j]] = true;

    net.source = 0;
    net.sink = 1;
    int next = 2;
    net.node_in.assign(m.n_x, -1);
    net.node_out.assign(m.n_x, -1);
    for (int s = 0; s < m.n_x; ++s) {
        if (net.type1[s]) {
            net.node_in[s] = next++;
            net.node_out[s] = next++;
        } else {
            net.node_in[s] = net.node_out[s] = next++;
        }
    }
    net.n_nodes = next;

    auto inf_arc = [&](int from, int to, FlowNetwork::ArcKind kind, int state = -1) {
        net.arcs.push_back({from, to, 0, true, kind, state});
    };
    auto fin_arc = [&](int from, int to, long long cap, FlowNetwork::ArcKind kind, int state) {
        net.arcs.push_back({from, to, cap, false, kind, state});
    };

    // rule (1): arcs from u_i route into the in-copy so a split state stays cuttable
    int own = m.actuator_target[u_i];
    inf_arc(net.source, net.node_in[own], FlowNetwork::ArcKind::source_out, own);
    // rule (2): state-to-state arcs, self-loops excluded
    for (auto [from, to] : g.e_xx)
        if (from != to)
            inf_arc(net.node_out[from], net.node_in[to], FlowNetwork::ArcKind::state_state, -1);
    // rule (3): unit internal arc per Type-1 state
    for (int s = 0; s < m.n_x; ++s)
        if (net.type1[s])
            fin_arc(net.node_in[s], net.node_out[s], 1, FlowNetwork::ArcKind::split_internal, s);
    // rule (4): measurement arcs into t
    for (int s = 0; s < m.n_x; ++s) {
        long long unprotected = 0;
        bool any_protected = false;
        for (const auto& sensor : m.sensors)
            if (sensor.target == s) {
                if (sensor.is_protected) any_protected = true;
                else ++unprotected;
            }
        if (any_protected)
            inf_arc(net.node_out[s], net.sink, FlowNetwork::ArcKind::to_sink, s);
        else if (unprotected > 0)
            fin_arc(net.node_out[s], net.sink, unprotected, FlowNetwork::ArcKind::to_sink, s);
    }

    long long finite_sum = 0;
    for (const auto& a : net.arcs)
        if (!a.infinite) finite_sum += a.cap;
    net.sentinel = finite_sum + 1;
    for (auto& a : net.arcs)
        if (a.infinite) a.cap = net.sentinel;
    return net;
}

namespace {

struct ResidualGraph {
    struct Edge {
        int to;
        long long cap;
        int rev;       // index of reverse edge in adj[to]
        int arc = -1;  // original arc index, -1 for reverse edges
    };
    std::vector<std::vector<Edge>> adj;

    explicit ResidualGraph(const FlowNetwork& net) : adj(net.n_nodes) {
        for (size_t k = 0; k < net.arcs.size(); ++k) {
            const auto& a = net.arcs[k];
            adj[a.from].push_back({a.to, a.cap, static_cast<int>(adj[a.to].size()),
                                   static_cast<int>(k)});
            adj[a.to].push_back({a.from, 0, static_cast<int>(adj[a.from].size()) - 1, -1});
        }
    }
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
    ResidualGraph rg(net);
    MaxFlowResult res;
    const int n = net.n_nodes;

    while (true) {
        // BFS for a shortest augmenting path
        std::vector<int> prev_node(n, -1), prev_edge(n, -1);
        std::deque<int> queue{net.source};
        prev_node[net.source] = net.source;
        while (!queue.empty() && prev_node[net.sink] < 0) {
            int v = queue.front();
            queue.pop_front();
            for (int e = 0; e < static_cast<int>(rg.adj[v].size()); ++e) {
                const auto& edge = rg.adj[v][e];
                if (edge.cap > 0 && prev_node[edge.to] < 0) {
                    prev_node[edge.to] = v;
                    prev_edge[edge.to] = e;
                    queue.push_back(edge.to);
                }
            }
        }
        if (prev_node[net.sink] < 0) break;
        long long bottleneck = std::numeric_limits<long long>::max();
        for (int v = net.sink; v != net.source; v = prev_node[v])
            bottleneck = std::min(bottleneck, rg.adj[prev_node[v]][prev_edge[v]].cap);
        for (int v = net.sink; v != net.source; v = prev_node[v]) {
            auto& fwd = rg.adj[prev_node[v]][prev_edge[v]];
            fwd.cap -= bottleneck;
            rg.adj[v][fwd.rev].cap += bottleneck;
        }
        res.value += bottleneck;
    }

    if (res.value >= net.sentinel) {
        res.infinite = true;
        return res;
    }
    // source-side partition in the final residual network
    std::vector<bool> reach(n, false);
    std::deque<int> queue{net.source};
    reach[net.source] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& edge : rg.adj[v])
            if (edge.cap > 0 && !reach[edge.to]) {
                reach[edge.to] = true;
                queue.push_back(edge.to);
            }
    }
    for (size_t k = 0; k < net.arcs.size(); ++k)
        if (reach[net.arcs[k].from] && !reach[net.arcs[k].to])
            res.cut.push_back(static_cast<int>(k));
    return res;
}

RobustReport delta_r(const StructuralModel& m, int u_i) {
    ExtendedGraph g = build_extended_graph(m);
    FlowNetwork net = build_flow_network(g, u_i);
    MaxFlowResult flow = max_flow(net);

    RobustReport report;
    report.actuator = u_i;
    if (flow.infinite) {
        report.value.infinite = true;
        return report;
    }
    report.value.value = static_cast<int>(flow.value) + 1;
    report.witness.actuators.push_back(u_i);
    for (int arc_idx : flow.cut) {
        const auto& arc = net.arcs[arc_idx];
        if (arc.kind == FlowNetwork::ArcKind::split_internal) {
            for (int j = 0; j < m.n_u(); ++j)
                if (j != u_i && m.actuator_target[j] == arc.state)
                    report.witness.actuators.push_back(j);
            report.separator_states.push_back(arc.state);
        } else if (arc.kind == FlowNetwork::ArcKind::to_sink) {
            for (int l = 0; l < m.n_sensors(); ++l)
                if (m.sensors[l].target == arc.state && !m.sensors[l].is_protected) {
                    report.witness.sensors.push_back(l);
                    report.separator_sensors.push_back(l);
                }
        }
    }
    std::sort(report.witness.actuators.begin(), report.witness.actuators.end());
    std::sort(report.witness.sensors.begin(), report.witness.sensors.end());
    std::sort(report.separator_states.begin(), report.separator_states.end());
    std::sort(report.separator_sensors.begin(), report.separator_sensors.end());
    return report;
}

std::vector<RobustReport> delta_r_all(const StructuralModel& m) {
    std::vector<RobustReport> out;
    out.reserve(m.n_u());
    for (int i = 0; i < m.n_u(); ++i) out.push_back(delta_r(m, i));
    return out;
}

RobustValue delta_r_oracle(const StructuralModel& m, int u_i) {
    if (m.n_u() + m.n_sensors() > 16)
        throw ValidationError("delta_r_oracle limited to n_u + n_y + n_e <= 16");
    ExtendedGraph g = build_extended_graph(m);

    std::vector<int> other_actuators;
    for (int j = 0; j < m.n_u(); ++j)
        if (j != u_i) other_actuators.push_back(j);
    std::vector<int> unprotected;
    for (int l = 0; l < m.n_sensors(); ++l)
        if (!m.sensors[l].is_protected) unprotected.push_back(l);

    const int na = static_cast<int>(other_actuators.size());
    const int ns = static_cast<int>(unprotected.size());
    RobustValue best{true, 0};
    for (std::uint32_t am = 0; am < (1u << na); ++am) {
        std::vector<int> x_a;
        int acount = 0;
        for (int k = 0; k < na; ++k)
            if (am & (1u << k)) {
                x_a.push_back(m.actuator_target[other_actuators[k]]);
                ++acount;
            }
        for (std::uint32_t sm = 0; sm < (1u << ns); ++sm) {
            std::vector<int> y_a;
            for (int k = 0; k < ns; ++k)
                if (sm & (1u << k)) y_a.push_back(unprotected[k]);
            int cost = 1 + acount + static_cast<int>(y_a.size());
            if (!best.infinite && cost >= best.value) continue;
            if (g.separates(u_i, x_a, y_a)) best = {false, cost};
        }
    }
    return best;
}

}  // namespace secidx
