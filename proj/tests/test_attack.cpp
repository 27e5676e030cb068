#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "secidx/attack.hpp"
#include "secidx/robust_index.hpp"
#include "secidx/scenario.hpp"

using namespace secidx;
using test_helpers::fixture;

namespace {

std::vector<double> ramp(int n, double scale) {
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = scale * k;
    return out;
}

}  // namespace

TEST_CASE("type-1 sensor cover obeys the platoon output recursion") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    ComponentSet set{{0}, {0}};
    AttackPolicy p = synth_type1(lm.model, *lm.realization, set, 0, ramp(50, -1.0));
    // With A = [[0.8, 0.1], [0.1, 0.8]] the sensor cover a_y satisfies
    // a_y(k+2) = 1.6 a_y(k+1) - 0.63 a_y(k) - 0.1 a_u1(k).
    for (int k = 0; k + 2 < 50; ++k) {
        double lhs = p.ff_sensor(0, k + 2);
        double rhs = 1.6 * p.ff_sensor(0, k + 1) - 0.63 * p.ff_sensor(0, k) -
                     0.1 * p.ff_actuator(0, k);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("type-1 under a mismatched model uses the believed coefficients") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    Realization believed = *lm.realization;
    believed.a(1, 0) = 0.11;
    believed.a(1, 1) = 0.78;
    ComponentSet set{{0}, {0}};
    AttackPolicy p = synth_type1(lm.model, believed, set, 0, ramp(50, -1.0));
    for (int k = 0; k + 2 < 50; ++k) {
        double lhs = p.ff_sensor(0, k + 2);
        double rhs = 1.58 * p.ff_sensor(0, k + 1) - 0.613 * p.ff_sensor(0, k) -
                     0.11 * p.ff_actuator(0, k);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("zero payload yields an all-zero type-1 policy") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    ComponentSet set{{0}, {0}};
    AttackPolicy p = synth_type1(lm.model, *lm.realization, set, 0,
                                 std::vector<double>(20, 0.0));
    CHECK(p.ff_actuator.cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.ff_sensor.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("type-1 refuses non-separator sets unless told otherwise") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    ComponentSet bare{{0}, {}};
    CHECK_THROWS_AS(synth_type1(lm.model, *lm.realization, bare, 0, ramp(10, 1.0)),
                    InfeasibleError);
    CHECK_NOTHROW(synth_type1(lm.model, *lm.realization, bare, 0, ramp(10, 1.0), true));
}

TEST_CASE("type-2 refuses non-separator sets") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    ComponentSet bare{{0}, {}};
    CHECK_THROWS_AS(synth_type2(lm.model, bare, 0, ramp(10, 1.0)), InfeasibleError);
}

TEST_CASE("type-2 holds the attacked sensor at its onset value") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    ComponentSet set{{0}, {0}};
    AttackPolicy p = synth_type2(lm.model, set, 0, ramp(50, -1.0));
    Eigen::VectorXd x0(2);
    x0 << 0.0, 10.0;
    Eigen::VectorXd u0(2);
    u0 << -1.0, 2.0;
    AttackTrace tr = simulate(*lm.realization, p, x0, constant_input(u0, 50), 50);
    for (int k = 0; k < 50; ++k) CHECK(tr.y_received(0, k) == doctest::Approx(10.0));
    CHECK(tr.max_residual() <= 1e-9);
}

TEST_CASE("type-2 cancels the attack exactly on the example3 structure") {
    LoadedModel lm = load_model(fixture("example3.json"));
    ComponentSet set{{0, 1}, {0}};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Realization r = random_realization(lm.model, rng());
        std::vector<double> payload(50);
        for (auto& v : payload) v = uni(rng);
        AttackPolicy p = synth_type2(lm.model, set, 0, payload);
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(3);
        Eigen::MatrixXd u_op = Eigen::MatrixXd::Zero(2, 50);
        AttackTrace tr = simulate(r, p, x0, u_op, 50);
        CHECK(tr.max_residual() <= 1e-9);
        CHECK(tr.y_received.cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("type-3 replay hides the attack in steady state") {
    LoadedModel lm = load_model(fixture("example4.json"));
    Realization r = random_realization(lm.model, 3);
    ComponentSet set{{0}, {0}};
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd u_op = Eigen::MatrixXd::Zero(1, 50);
    std::vector<double> recorded = warmup_record(r, x0, u_op, set.sensors);
    CHECK(recorded == std::vector<double>{0.0});
    AttackPolicy p = synth_type3(lm.model, set, 0, ramp(50, 1.0), recorded);
    CHECK(p.guarantee_ok);
    AttackTrace tr = simulate(r, p, x0, u_op, 50);
    CHECK(tr.max_residual() <= 1e-9);
}

TEST_CASE("type-3 without the sensor is visible") {
    LoadedModel lm = load_model(fixture("example4.json"));
    Realization r = random_realization(lm.model, 3);
    REQUIRE(r.a(1, 0) != 0.0);
    ComponentSet set{{0}, {}};
    AttackPolicy p = synth_type3(lm.model, set, 0, ramp(50, 1.0), {});
    CHECK_FALSE(p.guarantee_ok);
    AttackTrace tr = simulate(r, p, Eigen::VectorXd::Zero(2),
                              Eigen::MatrixXd::Zero(1, 50), 50);
    CHECK(tr.max_residual() > 1e-9);
}

TEST_CASE("type-1 stays undetectable for any initial state and input") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    LoadedModel lm = load_model(fixture("example3.json"));
    ComponentSet set{{0, 1}, {0}};
    for (int trial = 0; trial < 5; ++trial) {
        Realization r = random_realization(lm.model, rng());
        std::vector<double> payload(40);
        for (auto& v : payload) v = uni(rng);
        AttackPolicy p = synth_type1(lm.model, r, set, 0, payload);
        Eigen::VectorXd x0(3);
        x0 << uni(rng), uni(rng), uni(rng);
        Eigen::MatrixXd u_op(2, 40);
        for (int k = 0; k < 40; ++k) {
            u_op(0, k) = uni(rng);
            u_op(1, k) = uni(rng);
        }
        AttackTrace tr = simulate(r, p, x0, u_op, 40);
        CHECK(tr.max_residual() <= 1e-9);
    }
}

TEST_CASE("adversarial realization follows the path construction") {
    LoadedModel lm = load_model(fixture("example3.json"));
    Realization r = adversarial_realization(lm.model, 0, {0}, 0, 1);
    CHECK(r.a.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(r.c(0, 0)) >= 0.5);
    CHECK_NOTHROW(r.validate_against(lm.model));
}

TEST_CASE("adversarial realization rejects bad paths") {
    LoadedModel lm = load_model(fixture("example3.json"));
    // Not simple.
    CHECK_THROWS_AS(adversarial_realization(lm.model, 0, {0, 1, 0}, 0, 1), ValidationError);
    // Longer than the state count.
    CHECK_THROWS_AS(adversarial_realization(lm.model, 0, {0, 1, 2, 0}, 0, 1),
                    ValidationError);
    // Wrong start.
    CHECK_THROWS_AS(adversarial_realization(lm.model, 0, {1}, 0, 1), ValidationError);
    // Sensor not at the end of the path.
    CHECK_THROWS_AS(adversarial_realization(lm.model, 0, {0, 1}, 0, 1), ValidationError);
}

TEST_CASE("adversarial realization exposes an uncovered attack quickly") {
    LoadedModel lm = load_model(fixture("example3.json"));
    Realization r = adversarial_realization(lm.model, 0, {0}, 0, 9);
    ComponentSet bare{{0}, {}};
    AttackPolicy p =
        synth_type1(lm.model, r, bare, 0, std::vector<double>(10, 10.0), true);
    AttackTrace tr = simulate(r, p, Eigen::VectorXd::Zero(3),
                              Eigen::MatrixXd::Zero(2, 10), 10);
    bool detected = false;
    for (int k = 0; k < std::min(10, lm.model.n_x + 2); ++k)
        if (tr.residual.col(k).cwiseAbs().maxCoeff() > 1e-3) detected = true;
    CHECK(detected);
}

TEST_CASE("trace CSV layout") {
    LoadedModel lm = load_model(fixture("platoon.json"));
    ComponentSet set{{0}, {0}};
    AttackPolicy p = synth_type2(lm.model, set, 0, ramp(3, 1.0));
    Eigen::VectorXd x0(2);
    x0 << 0.0, 10.0;
    Eigen::VectorXd u0(2);
    u0 << -1.0, 2.0;
    AttackTrace tr = simulate(*lm.realization, p, x0, constant_input(u0, 3), 3);
    std::string csv = tr.to_csv();
    CHECK(csv.rfind("k,x_1,x_2,y_received_1,y_expected_1,residual_1\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}

TEST_CASE("scenario files drive the platoon cases") {
    Scenario c1f = load_scenario(fixture("case1_type1.json"));
    CHECK(run_scenario(c1f).max_residual() <= 1e-9);
    Scenario c1l = load_scenario(fixture("case1_type2.json"));
    CHECK(run_scenario(c1l).max_residual() <= 1e-9);

    Scenario c2f = load_scenario(fixture("case2_type1.json"));
    CHECK(run_scenario(c2f).max_residual() > 1e-3);
    Scenario c2l = load_scenario(fixture("case2_type2.json"));
    CHECK(run_scenario(c2l).max_residual() <= 1e-9);

    Scenario c3f = load_scenario(fixture("case3_type1.json"));
    CHECK(run_scenario(c3f).max_residual() <= 1e-9);
    Scenario c3l = load_scenario(fixture("case3_type2.json"));
    CHECK(run_scenario(c3l).max_residual() > 1e-3);
}
