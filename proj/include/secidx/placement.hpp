#pragma once

#include <optional>
#include <vector>

#include "secidx/model.hpp"
#include "secidx/robust_index.hpp"

namespace secidx {

/// States where a new sensor is guaranteed to raise the robust index of the
/// actuator: reachable from u_i along paths avoiding states adjacent to any
/// other actuator.
struct XSet {
    int actuator = 0;
    std::vector<int> states;  // sorted
    bool contains(int state) const;
};

XSet x_set(const StructuralModel& m, int u_i);

struct PlacementInstance {
    StructuralModel model;
    std::vector<int> candidate_states;  // state each candidate sensor would measure
    std::vector<int> k;                 // per-actuator required increase (unprotected problem)
    std::vector<int> u_p;               // actuators to push to infinity (protected problem)
    int k_max = 0;

    const std::vector<XSet>& x_sets() const;

private:
    mutable std::vector<XSet> x_sets_;
};

/// G(Y_p) = sum_i min{#chosen candidates inside X_{u_i}, k_i}.
int gain_unprotected(const PlacementInstance& inst, const std::vector<int>& chosen);

/// G'(X_p) = #{u_i in U_p : X_p touches X_{u_i}}. Takes state ids.
int gain_protected(const PlacementInstance& inst, const std::vector<int>& states);

struct GreedyUnprotectedResult {
    std::vector<int> chosen;  // candidate indices, in pick order
    double certificate = 0;   // H(max single-candidate gain)
    int achieved = 0;
};

/// Greedy cover; throws InfeasibleError when even the full candidate set
/// cannot reach the target sum.
GreedyUnprotectedResult greedy_unprotected(const PlacementInstance& inst);

struct GreedyProtectedResult {
    std::vector<int> states;  // in pick order
    int value = 0;
};

GreedyProtectedResult greedy_protected(const PlacementInstance& inst);

/// Exhaustive optima for small instances (<= 16 candidates / states).
std::optional<std::vector<int>> brute_force_unprotected(const PlacementInstance& inst);
std::pair<std::vector<int>, int> brute_force_protected(const PlacementInstance& inst);

/// Default candidate universe: one sensor per state in the union of X-sets.
std::vector<int> default_candidates(const StructuralModel& m);

/// Harmonic number H(d).
double harmonic(int d);

}  // namespace secidx
