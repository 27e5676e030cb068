#include "secidx/placement.hpp"

#include <algorithm>
#include <numeric>

namespace secidx {

bool XSet::contains(int state) const {
    return std::binary_search(states.begin(), states.end(), state);
}

XSet x_set(const StructuralModel& m, int u_i) {
    if (u_i < 0 || u_i >= m.n_u()) throw ValidationError("actuator id out of range");
    ExtendedGraph g = build_extended_graph(m);
    std::vector<int> removed;
    for (int j = 0; j < m.n_u(); ++j)
        if (j != u_i) removed.push_back(m.actuator_target[j]);
    XSet out;
    out.actuator = u_i;
    out.states = g.reachable_states(u_i, removed);
    return out;
}

const std::vector<XSet>& PlacementInstance::x_sets() const {
    if (x_sets_.empty() && model.n_u() > 0) {
        for (int i = 0; i < model.n_u(); ++i) x_sets_.push_back(x_set(model, i));
    }
    return x_sets_;
}

int gain_unprotected(const PlacementInstance& inst, const std::vector<int>& chosen) {
    const auto& xs = inst.x_sets();
    int total = 0;
    for (int i = 0; i < inst.model.n_u(); ++i) {
        int hits = 0;
        for (int c : chosen)
            if (xs[i].contains(inst.candidate_states[c])) ++hits;
        total += std::min(hits, inst.k[i]);
    }
    return total;
}

int gain_protected(const PlacementInstance& inst, const std::vector<int>& states) {
    const auto& xs = inst.x_sets();
    int total = 0;
    for (int i : inst.u_p) {
        for (int s : states)
            if (xs[i].contains(s)) {
                ++total;
                break;
            }
    }
    return total;
}

GreedyUnprotectedResult greedy_unprotected(const PlacementInstance& inst) {
    if (static_cast<int>(inst.k.size()) != inst.model.n_u())
        throw ValidationError("k must list one target per actuator");
    const int target = std::accumulate(inst.k.begin(), inst.k.end(), 0);
    const int nc = static_cast<int>(inst.candidate_states.size());

    std::vector<int> all(nc);
    std::iota(all.begin(), all.end(), 0);
    if (gain_unprotected(inst, all) < target)
        throw InfeasibleError("full candidate set cannot reach the requested gain");

    GreedyUnprotectedResult res;
    int max_single = 0;
    for (int c = 0; c < nc; ++c)
        max_single = std::max(max_single, gain_unprotected(inst, {c}));
    res.certificate = harmonic(max_single);

    std::vector<bool> used(nc, false);
    int current = 0;
    while (current < target) {
        int best_c = -1, best_gain = 0;
        for (int c = 0; c < nc; ++c) {
            if (used[c]) continue;
            std::vector<int> trial = res.chosen;
            trial.push_back(c);
            int inc = gain_unprotected(inst, trial) - current;
            if (inc > best_gain) {  // ties keep the smallest index
                best_gain = inc;
                best_c = c;
            }
        }
        if (best_c < 0) throw InfeasibleError("greedy stalled before reaching the target");
        used[best_c] = true;
        res.chosen.push_back(best_c);
        current += best_gain;
    }
    res.achieved = current;
    return res;
}

GreedyProtectedResult greedy_protected(const PlacementInstance& inst) {
    GreedyProtectedResult res;
    std::vector<bool> used(inst.model.n_x, false);
    for (int step = 0; step < inst.k_max; ++step) {
        int best_s = -1, best_gain = 0;
        for (int s = 0; s < inst.model.n_x; ++s) {
            if (used[s]) continue;
            std::vector<int> trial = res.states;
            trial.push_back(s);
            int inc = gain_protected(inst, trial) - res.value;
            if (inc > best_gain) {
                best_gain = inc;
                best_s = s;
            }
        }
        if (best_s < 0) break;  // no further increment possible
        used[best_s] = true;
        res.states.push_back(best_s);
        res.value += best_gain;
    }
    return res;
}

std::optional<std::vector<int>> brute_force_unprotected(const PlacementInstance& inst) {
    const int nc = static_cast<int>(inst.candidate_states.size());
    if (nc > 16) throw ValidationError("brute force limited to <= 16 candidates");
    const int target = std::accumulate(inst.k.begin(), inst.k.end(), 0);
    std::optional<std::vector<int>> best;
    for (std::uint32_t mask = 0; mask < (1u << nc); ++mask) {
        std::vector<int> chosen;
        for (int c = 0; c < nc; ++c)
            if (mask & (1u << c)) chosen.push_back(c);
        if (best && chosen.size() >= best->size()) continue;
        if (gain_unprotected(inst, chosen) >= target) best = chosen;
    }
    return best;
}

std::pair<std::vector<int>, int> brute_force_protected(const PlacementInstance& inst) {
    const int nx = inst.model.n_x;
    if (nx > 16) throw ValidationError("brute force limited to <= 16 states");
    std::pair<std::vector<int>, int> best{{}, 0};
    for (std::uint32_t mask = 0; mask < (1u << nx); ++mask) {
        std::vector<int> states;
        for (int s = 0; s < nx; ++s)
            if (mask & (1u << s)) states.push_back(s);
        if (static_cast<int>(states.size()) > inst.k_max) continue;
        int v = gain_protected(inst, states);
        if (v > best.second) best = {states, v};
    }
    return best;
}

std::vector<int> default_candidates(const StructuralModel& m) {
    std::vector<bool> in_union(m.n_x, false);
    for (int i = 0; i < m.n_u(); ++i)
        for (int s : x_set(m, i).states) in_union[s] = true;
    std::vector<int> out;
    for (int s = 0; s < m.n_x; ++s)
        if (in_union[s]) out.push_back(s);
    return out;
}

double harmonic(int d) {
    double h = 0;
    for (int i = 1; i <= d; ++i) h += 1.0 / i;
    return h;
}

}  // namespace secidx
