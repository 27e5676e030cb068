#include "secidx/exact_index.hpp"

#include <algorithm>

namespace secidx {

bool leq(const IndexValue& a, const IndexValue& b) {
    auto key = [](const IndexValue& v) {
        switch (v.kind) {
            case IndexValue::Kind::finite: return std::pair(0, v.value);
            case IndexValue::Kind::at_least: return std::pair(1, v.value);
            default: return std::pair(2, 0);
        }
    };
    return key(a) <= key(b);
}

ComponentSet component_set_from_flat(const std::vector<int>& flat, int n_u) {
    ComponentSet out;
    for (int id : flat) {
        if (id < n_u) out.actuators.push_back(id);
        else out.sensors.push_back(id - n_u);
    }
    std::sort(out.actuators.begin(), out.actuators.end());
    std::sort(out.sensors.begin(), out.sensors.end());
    return out;
}

std::vector<int> flat_from_component_set(const ComponentSet& set, int n_u) {
    std::vector<int> flat = set.actuators;
    for (int s : set.sensors) flat.push_back(s + n_u);
    std::sort(flat.begin(), flat.end());
    return flat;
}

bool feasible(const NormrankEvaluator& ev, const std::vector<int>& set, int i) {
    std::vector<int> without;
    without.reserve(set.size());
    for (int id : set)
        if (id != i) without.push_back(id);
    return ev.normrank(set).rank == ev.normrank(without).rank;
}

bool feasible(const Realization& r, const ComponentSet& set, int i, std::uint64_t seed) {
    NormrankEvaluator ev(r, seed);
    return feasible(ev, flat_from_component_set(set, r.n_u()), i);
}

namespace {

bool feasible_tracking(const NormrankEvaluator& ev, const std::vector<int>& set, int i,
                       bool& borderline) {
    std::vector<int> without;
    without.reserve(set.size());
    for (int id : set)
        if (id != i) without.push_back(id);
    RankResult with_i = ev.normrank(set);
    RankResult sans_i = ev.normrank(without);
    borderline = borderline || with_i.borderline || sans_i.borderline;
    return with_i.rank == sans_i.rank;
}

}  // namespace

IndexReport delta(const Realization& r, int i, std::optional<int> budget, std::uint64_t seed) {
    const int n_u = r.n_u();
    const int total = n_u + r.n_y;
    NormrankEvaluator ev(r, seed);

    std::vector<int> others;
    for (int id = 0; id < total; ++id)
        if (id != i) others.push_back(id);

    int cap = std::min(budget.value_or(total), total);
    IndexReport report;
    report.actuator = i;

    for (int p = 1; p <= cap; ++p) {
        const int choose = p - 1;
        // lexicographic combinations of `others` of size choose
        std::vector<int> idx(choose);
        for (int k = 0; k < choose; ++k) idx[k] = k;
        while (true) {
            std::vector<int> set{i};
            for (int k : idx) set.push_back(others[k]);
            std::sort(set.begin(), set.end());
            if (feasible_tracking(ev, set, i, report.borderline)) {
                report.value = IndexValue::finite(p);
                report.witness = component_set_from_flat(set, n_u);
                return report;
            }
            // next combination
            int k = choose - 1;
            while (k >= 0 && idx[k] == static_cast<int>(others.size()) - choose + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < choose; ++j) idx[j] = idx[j - 1] + 1;
            if (choose == 0) break;
        }
    }
    report.value = (cap == total) ? IndexValue::infinite() : IndexValue::at_least(cap + 1);
    return report;
}

std::vector<IndexReport> delta_all(const Realization& r, std::optional<int> budget,
                                   std::uint64_t seed) {
    std::vector<IndexReport> out;
    out.reserve(r.n_u());
    for (int i = 0; i < r.n_u(); ++i) out.push_back(delta(r, i, budget, seed));
    return out;
}

}  // namespace secidx
