#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "secidx/model.hpp"

namespace test_helpers {

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

/// Small random structural model: n_x in [2,6], up to 3 actuators with
/// distinct targets, 1-4 single-state sensors, sparse state coupling.
inline secidx::StructuralModel random_structural_model(std::mt19937_64& rng,
                                                       bool allow_protected = true) {
    secidx::StructuralModel m;
    m.n_x = 2 + static_cast<int>(rng() % 5);
    m.a_pattern.assign(static_cast<size_t>(m.n_x) * m.n_x, 0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < m.n_x; ++i)
        for (int j = 0; j < m.n_x; ++j)
            if (uni(rng) < 0.35) m.set_a(i, j, true);

    int n_u = 1 + static_cast<int>(rng() % std::min(3, m.n_x));
    std::vector<int> states(m.n_x);
    std::iota(states.begin(), states.end(), 0);
    std::shuffle(states.begin(), states.end(), rng);
    m.actuator_target.assign(states.begin(), states.begin() + n_u);

    int n_sensors = 1 + static_cast<int>(rng() % 4);
    std::vector<secidx::SensorSpec> unprot, prot;
    for (int l = 0; l < n_sensors; ++l) {
        secidx::SensorSpec s{static_cast<int>(rng() % m.n_x), false};
        if (allow_protected && uni(rng) < 0.25) {
            s.is_protected = true;
            prot.push_back(s);
        } else {
            unprot.push_back(s);
        }
    }
    m.sensors = unprot;
    m.sensors.insert(m.sensors.end(), prot.begin(), prot.end());
    m.validate();
    return m;
}

}  // namespace test_helpers
