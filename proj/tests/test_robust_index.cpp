#include "doctest.h"

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "secidx/robust_index.hpp"

using namespace secidx;
using test_helpers::fixture;

namespace {

bool has_edge(const std::vector<std::pair<int, int>>& edges, int a, int b) {
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

}  // namespace

TEST_CASE("extended graph of the example4 structure") {
    LoadedModel lm = load_model(fixture("example4.json"));
    ExtendedGraph g = build_extended_graph(lm.model);
    CHECK(has_edge(g.e_ux, 0, 0));
    CHECK(has_edge(g.e_xx, 0, 1));
    CHECK(has_edge(g.e_xx, 1, 1));  // self-loop kept in the graph form
    CHECK(has_edge(g.e_xy, 1, 0));
}

TEST_CASE("extended graph of the example3 structure") {
    LoadedModel lm = load_model(fixture("example3.json"));
    ExtendedGraph g = build_extended_graph(lm.model);
    CHECK(has_edge(g.e_ux, 0, 0));
    CHECK(has_edge(g.e_ux, 1, 1));
    CHECK(has_edge(g.e_xx, 0, 1));
    CHECK(has_edge(g.e_xx, 1, 0));
    CHECK(has_edge(g.e_xx, 1, 2));
    CHECK(has_edge(g.e_xx, 2, 1));
    CHECK(has_edge(g.e_xy, 0, 0));
    CHECK(has_edge(g.e_xy, 2, 1));
}

TEST_CASE("flow network for example3 and its max flow") {
    LoadedModel lm = load_model(fixture("example3.json"));
    ExtendedGraph g = build_extended_graph(lm.model);
    FlowNetwork net = build_flow_network(g, 0);
    // x2 hosts the other actuator: split with a unit internal arc.
    CHECK(net.type1[1]);
    CHECK_FALSE(net.type1[0]);
    CHECK_FALSE(net.type1[2]);
    int unit_arcs = 0;
    for (const auto& a : net.arcs)
        if (a.kind == FlowNetwork::ArcKind::split_internal) {
            ++unit_arcs;
            CHECK(a.cap == 1);
            CHECK(a.state == 1);
        }
    CHECK(unit_arcs == 1);

    MaxFlowResult flow = max_flow(net);
    CHECK_FALSE(flow.infinite);
    CHECK(flow.value == 2);
}

TEST_CASE("self-loops are dropped from the flow network") {
    LoadedModel lm = load_model(fixture("example4.json"));
    ExtendedGraph g = build_extended_graph(lm.model);
    FlowNetwork net = build_flow_network(g, 0);
    for (const auto& a : net.arcs) CHECK(a.from != a.to);
}

TEST_CASE("two unprotected sensors on one state give a capacity-2 arc") {
    LoadedModel lm = load_model(fixture("example4.json"));
    StructuralModel m = add_sensor(lm.model, 1, false);
    ExtendedGraph g = build_extended_graph(m);
    FlowNetwork net = build_flow_network(g, 0);
    bool found = false;
    for (const auto& a : net.arcs)
        if (a.kind == FlowNetwork::ArcKind::to_sink && a.state == 1) {
            found = true;
            CHECK(a.cap == 2);
            CHECK_FALSE(a.infinite);
        }
    CHECK(found);
}

TEST_CASE("max flow on a hand-built single arc") {
    FlowNetwork net;
    net.n_nodes = 2;
    net.source = 0;
    net.sink = 1;
    net.arcs.push_back({0, 1, 5, false, FlowNetwork::ArcKind::to_sink, -1});
    net.sentinel = 6;
    MaxFlowResult res = max_flow(net);
    CHECK(res.value == 5);
    REQUIRE(res.cut.size() == 1);
    CHECK(res.cut[0] == 0);
}

TEST_CASE("max flow with disconnected sink") {
    FlowNetwork net;
    net.n_nodes = 3;
    net.source = 0;
    net.sink = 1;
    net.arcs.push_back({0, 2, 4, false, FlowNetwork::ArcKind::state_state, -1});
    net.sentinel = 5;
    MaxFlowResult res = max_flow(net);
    CHECK(res.value == 0);
    CHECK(res.cut.empty());
}

TEST_CASE("example3 robust index with witness and separator") {
    LoadedModel lm = load_model(fixture("example3.json"));
    RobustReport rep = delta_r(lm.model, 0);
    CHECK_FALSE(rep.value.infinite);
    CHECK(rep.value.value == 3);
    CHECK(rep.witness.actuators == std::vector<int>{0, 1});
    CHECK(rep.witness.sensors == std::vector<int>{0});
    CHECK(rep.separator_states == std::vector<int>{1});
    CHECK(rep.separator_sensors == std::vector<int>{0});

    // The separator really disconnects u1 from the sink.
    ExtendedGraph g = build_extended_graph(lm.model);
    CHECK(g.separates(0, rep.separator_states, rep.separator_sensors));
}

TEST_CASE("example4 robust index is 2") {
    LoadedModel lm = load_model(fixture("example4.json"));
    RobustReport rep = delta_r(lm.model, 0);
    CHECK(rep.value == RobustValue{false, 2});
    CHECK(rep.witness.actuators == std::vector<int>{0});
    CHECK(rep.witness.sensors == std::vector<int>{0});
}

TEST_CASE("protected path makes the robust index infinite") {
    LoadedModel lm = load_model(fixture("example1.json"));
    RobustReport rep = delta_r(lm.model, 0);
    CHECK(rep.value.infinite);
}

TEST_CASE("oracle matches on the bundled examples") {
    LoadedModel e3 = load_model(fixture("example3.json"));
    CHECK(delta_r_oracle(e3.model, 0) == RobustValue{false, 3});
    LoadedModel e4 = load_model(fixture("example4.json"));
    CHECK(delta_r_oracle(e4.model, 0) == RobustValue{false, 2});
    LoadedModel e1 = load_model(fixture("example1.json"));
    CHECK(delta_r_oracle(e1.model, 0).infinite);
}

TEST_CASE("single downstream unprotected sensor forces index 2") {
    StructuralModel m;
    m.n_x = 2;
    m.a_pattern = {0, 0, 1, 0};  // x1 -> x2
    m.actuator_target = {0};
    m.sensors = {{1, false}};
    CHECK(delta_r_oracle(m, 0) == RobustValue{false, 2});
    CHECK(delta_r(m, 0).value == RobustValue{false, 2});
}

TEST_CASE("max-flow value equals the returned cut capacity") {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 40; ++t) {
        StructuralModel m = test_helpers::random_structural_model(rng);
        for (int i = 0; i < m.n_u(); ++i) {
            FlowNetwork net = build_flow_network(build_extended_graph(m), i);
            MaxFlowResult res = max_flow(net);
            if (res.infinite) continue;
            long long cut_cap = 0;
            for (int k : res.cut) cut_cap += net.arcs[k].cap;
            CHECK(cut_cap == res.value);
        }
    }
}

TEST_CASE("flow index agrees with the enumeration oracle on random models") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 30; ++t) {
        StructuralModel m = test_helpers::random_structural_model(rng);
        for (int i = 0; i < m.n_u(); ++i) {
            RobustReport rep = delta_r(m, i);
            RobustValue oracle = delta_r_oracle(m, i);
            CHECK(rep.value == oracle);
            if (!rep.value.infinite) {
                CHECK(rep.witness.size() == rep.value.value);
                CHECK(rep.witness.has_actuator(i));
            }
        }
    }
}
