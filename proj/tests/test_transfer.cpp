#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "secidx/transfer.hpp"

using namespace secidx;
using test_helpers::fixture;

TEST_CASE("eval_G on the example1 realization at z=2") {
    LoadedModel lm = load_model(fixture("example1.json"));
    Eigen::MatrixXcd g = eval_G(*lm.realization, {2.0, 0.0});
    REQUIRE(g.rows() == 1);
    REQUIRE(g.cols() == 1);
    // C (zI - A)^{-1} B = 0.01 / (z - 0.1)^2
    CHECK(std::abs(g(0, 0) - std::complex<double>(0.01 / (1.9 * 1.9))) < 1e-12);
}

TEST_CASE("sensor-attack column is the canonical unit column") {
    // Platoon structure with the sensor unprotected: its G column is pure D_a.
    LoadedModel lm = load_model(fixture("platoon.json"));
    Eigen::MatrixXcd g = eval_G(*lm.realization, {1.0, 0.0});
    REQUIRE(g.cols() == 3);  // u1, u2, y1
    CHECK(std::abs(g(0, 2) - std::complex<double>(1.0)) < 1e-12);
}

TEST_CASE("A=0, B=I, C=I gives a 0.5 I actuator block at z=2") {
    StructuralModel m;
    m.n_x = 2;
    m.a_pattern.assign(4, 0);
    m.actuator_target = {0, 1};
    m.sensors = {{0, false}, {1, false}};
    Realization r;
    r.a = Eigen::MatrixXd::Zero(2, 2);
    r.b = Eigen::MatrixXd::Identity(2, 2);
    r.c = Eigen::MatrixXd::Identity(2, 2);
    r.n_y = 2;
    Eigen::MatrixXcd g = eval_G(r, {2.0, 0.0});
    CHECK(std::abs(g(0, 0) - std::complex<double>(0.5)) < 1e-12);
    CHECK(std::abs(g(1, 1) - std::complex<double>(0.5)) < 1e-12);
    CHECK(std::abs(g(0, 1)) < 1e-12);
}

TEST_CASE("eval_G rejects eigenvalue sample points") {
    LoadedModel lm = load_model(fixture("example1.json"));
    CHECK_THROWS_AS(eval_G(*lm.realization, {0.1, 0.0}), ValidationError);
}

TEST_CASE("normrank on the example1 family") {
    LoadedModel lm = load_model(fixture("example1.json"));
    CHECK(normrank(*lm.realization, {0}) == 1);
    CHECK(normrank(*lm.realization, {}) == 0);

    LoadedModel mod = load_model(fixture("example1_modified.json"));
    CHECK(normrank(*mod.realization, {0}) == 0);
}

TEST_CASE("numeric_rank basics") {
    CHECK(numeric_rank(Eigen::MatrixXcd::Identity(3, 3)).rank == 3);
    CHECK(numeric_rank(Eigen::MatrixXcd::Zero(3, 3)).rank == 0);
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 2.0, 2.0, 4.0;
    CHECK(numeric_rank(m).rank == 1);
}

TEST_CASE("normrank monotonicity and dimension bound") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        StructuralModel m = test_helpers::random_structural_model(rng);
        Realization r = random_realization(m, rng());
        NormrankEvaluator ev(r, 123);
        int total = ev.total_columns();
        std::vector<int> small, big;
        for (int c = 0; c < total; ++c) {
            if (rng() % 2) big.push_back(c);
        }
        for (int c : big)
            if (rng() % 2) small.push_back(c);
        int rk_small = ev.normrank(small).rank;
        int rk_big = ev.normrank(big).rank;
        CHECK(rk_small <= rk_big);
        CHECK(rk_big <= std::min<int>(m.n_sensors(), static_cast<int>(big.size())));
    }
}

TEST_CASE("normrank is stable across sample seeds") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 100; ++t) {
        StructuralModel m = test_helpers::random_structural_model(rng);
        Realization r = random_realization(m, rng());
        std::vector<int> all(r.n_u() + r.n_y);
        for (size_t c = 0; c < all.size(); ++c) all[c] = static_cast<int>(c);
        CHECK(normrank(r, all, 1) == normrank(r, all, 2));
    }
}
