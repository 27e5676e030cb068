#pragma once

#include <optional>
#include <vector>

#include "secidx/model.hpp"
#include "secidx/transfer.hpp"

namespace secidx {

/// A security-index value: a count, infinity, or a truncated lower bound
/// ("at least v, possibly infinite") from a budget-capped search.
struct IndexValue {
    enum class Kind { finite, infinite, at_least };
    Kind kind = Kind::infinite;
    int value = 0;

    static IndexValue finite(int v) { return {Kind::finite, v}; }
    static IndexValue infinite() { return {Kind::infinite, 0}; }
    static IndexValue at_least(int v) { return {Kind::at_least, v}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool operator==(const IndexValue&) const = default;
};

/// Orders finite values below at_least bounds below infinity; used by the
/// monotonicity property checks.
bool leq(const IndexValue& a, const IndexValue& b);

struct IndexReport {
    int actuator = 0;
    IndexValue value;
    std::optional<ComponentSet> witness;  // cardinality == value when finite
    bool borderline = false;  // some deciding rank test had a marginal pivot
};

/// Feasibility of a perfectly undetectable attack over `set` actively using
/// component i: normrank of the selected columns is unchanged when i is
/// dropped. Ids are flat G column ids (actuators then unprotected sensors).
bool feasible(const NormrankEvaluator& ev, const std::vector<int>& set, int i);
bool feasible(const Realization& r, const ComponentSet& set, int i,
              std::uint64_t seed = 0);

/// Brute-force search over subsets containing actuator i, cardinality-first,
/// lexicographic within a cardinality; first feasible subset wins.
IndexReport delta(const Realization& r, int i,
                  std::optional<int> budget = std::nullopt, std::uint64_t seed = 0);

std::vector<IndexReport> delta_all(const Realization& r,
                                   std::optional<int> budget = std::nullopt,
                                   std::uint64_t seed = 0);

/// Flat column ids <-> ComponentSet.
ComponentSet component_set_from_flat(const std::vector<int>& flat, int n_u);
std::vector<int> flat_from_component_set(const ComponentSet& set, int n_u);

}  // namespace secidx
