#include "secidx/attack.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "secidx/robust_index.hpp"

namespace secidx {

namespace {

std::vector<int> induced_states(const StructuralModel& m, const ComponentSet& set, int i) {
    std::vector<int> x_a;
    for (int j : set.actuators)
        if (j != i) x_a.push_back(m.actuator_target[j]);
    return x_a;
}

void check_set(const StructuralModel& m, const ComponentSet& set, int i) {
    if (!set.has_actuator(i))
        throw ValidationError("active actuator must be part of the attacked set");
    for (int j : set.actuators)
        if (j < 0 || j >= m.n_u()) throw ValidationError("attacked actuator id out of range");
    for (int l : set.sensors)
        if (l < 0 || l >= m.n_y())
            throw ValidationError("attacked sensor id out of range (protected sensors cannot be attacked)");
}

double payload_at(const AttackPolicy& p, int k) {
    int idx = k - p.k_start;
    if (idx < 0 || idx >= static_cast<int>(p.payload.size())) return 0.0;
    return p.payload[idx];
}

int b_row(const Eigen::MatrixXd& b, int j) {
    for (int p = 0; p < b.rows(); ++p)
        if (b(p, j) != 0.0) return p;
    throw ValidationError("believed realization has an idle actuator column");
}

}  // namespace

double AttackTrace::max_residual() const {
    if (residual.size() == 0) return 0.0;
    return residual.cwiseAbs().maxCoeff();
}

std::string AttackTrace::to_csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "k";
    for (Eigen::Index i = 0; i < x.rows(); ++i) out << ",x_" << (i + 1);
    for (Eigen::Index i = 0; i < y_received.rows(); ++i) out << ",y_received_" << (i + 1);
    for (Eigen::Index i = 0; i < y_expected.rows(); ++i) out << ",y_expected_" << (i + 1);
    for (Eigen::Index i = 0; i < residual.rows(); ++i) out << ",residual_" << (i + 1);
    out << "\n";
    for (int k = 0; k < horizon; ++k) {
        out << k;
        for (Eigen::Index i = 0; i < x.rows(); ++i) out << "," << x(i, k);
        for (Eigen::Index i = 0; i < y_received.rows(); ++i) out << "," << y_received(i, k);
        for (Eigen::Index i = 0; i < y_expected.rows(); ++i) out << "," << y_expected(i, k);
        for (Eigen::Index i = 0; i < residual.rows(); ++i) out << "," << residual(i, k);
        out << "\n";
    }
    return out.str();
}

AttackPolicy synth_type1(const StructuralModel& m, const Realization& r_believed,
                         const ComponentSet& set, int i,
                         const std::vector<double>& payload, bool allow_detection) {
    check_set(m, set, i);
    ExtendedGraph g = build_extended_graph(m);
    if (!allow_detection && !g.separates(i, induced_states(m, set, i), set.sensors))
        throw InfeasibleError("attacked set does not induce a vertex separator of u_i and t");
    for (int j : set.actuators)
        if (r_believed.b(b_row(r_believed.b, j), j) == 0.0)
            throw ValidationError("believed B entry zero for an attacked actuator");

    AttackPolicy p;
    p.kind = PolicyKind::type1_feedforward;
    p.attacked = set;
    p.active_actuator = i;
    p.payload = payload;

    const int horizon = static_cast<int>(payload.size());
    const int nx = r_believed.n_x();
    p.ff_actuator = Eigen::MatrixXd::Zero(r_believed.n_u(), horizon);
    p.ff_sensor = Eigen::MatrixXd::Zero(r_believed.n_outputs(), horizon);

    // Superposition response to the attack alone: x(0)=0, u=0. The covers
    // cancel the induced state/output deviations step by step.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nx);
    for (int k = 0; k < horizon; ++k) {
        p.ff_actuator(i, k) = payload[k];
        for (int j : set.actuators) {
            if (j == i) continue;
            int row = b_row(r_believed.b, j);
            p.ff_actuator(j, k) = -r_believed.a.row(row).dot(x) / r_believed.b(row, j);
        }
        for (int l : set.sensors) p.ff_sensor(l, k) = -r_believed.c.row(l).dot(x);
        x = r_believed.a * x + r_believed.b * p.ff_actuator.col(k);
    }
    return p;
}

AttackPolicy synth_type2(const StructuralModel& m, const ComponentSet& set, int i,
                         const std::vector<double>& payload, int k_start) {
    check_set(m, set, i);
    ExtendedGraph g = build_extended_graph(m);
    if (!g.separates(i, induced_states(m, set, i), set.sensors))
        throw InfeasibleError("attacked set does not induce a vertex separator of u_i and t");
    AttackPolicy p;
    p.kind = PolicyKind::type2_local_feedback;
    p.attacked = set;
    p.active_actuator = i;
    p.payload = payload;
    p.k_start = k_start;
    return p;
}

AttackPolicy synth_type3(const StructuralModel& m, const ComponentSet& set, int i,
                         const std::vector<double>& payload,
                         const std::vector<double>& recorded, int k_start) {
    check_set(m, set, i);
    if (recorded.size() != set.sensors.size())
        throw ValidationError("one recorded value per attacked sensor required");
    AttackPolicy p;
    p.kind = PolicyKind::type3_replay;
    p.attacked = set;
    p.active_actuator = i;
    p.payload = payload;
    p.recorded = recorded;
    p.k_start = k_start;

    // The guarantee needs every sensor reachable from u_i to be replayed.
    ExtendedGraph g = build_extended_graph(m);
    for (int s : g.reachable_states(i, {})) {
        for (int l = 0; l < m.n_sensors(); ++l) {
            if (m.sensors[l].target != s) continue;
            if (m.sensors[l].is_protected || !set.has_sensor(l)) p.guarantee_ok = false;
        }
    }
    return p;
}

AttackTrace simulate(const Realization& r_true, const AttackPolicy& policy,
                     const Eigen::VectorXd& x0, const Eigen::MatrixXd& u_op, int horizon) {
    const int nx = r_true.n_x();
    const int nu = r_true.n_u();
    const int nout = r_true.n_outputs();
    if (x0.size() != nx) throw ValidationError("x0 dimension mismatch");
    if (u_op.rows() != nu || u_op.cols() < horizon)
        throw ValidationError("operator input dimension mismatch");

    AttackTrace tr;
    tr.horizon = horizon;
    tr.x = Eigen::MatrixXd::Zero(nx, horizon);
    tr.y_received = Eigen::MatrixXd::Zero(nout, horizon);
    tr.y_expected = Eigen::MatrixXd::Zero(nout, horizon);
    tr.residual = Eigen::MatrixXd::Zero(nout, horizon);

    Eigen::VectorXd x_nom = x0, x_att = x0;
    std::vector<double> hold(nout, 0.0);
    bool hold_captured = false;

    for (int k = 0; k < horizon; ++k) {
        tr.y_expected.col(k) = r_true.c * x_nom;
        Eigen::VectorXd y_raw = r_true.c * x_att;
        Eigen::VectorXd y_rec = y_raw;
        Eigen::VectorXd a_act = Eigen::VectorXd::Zero(nu);
        const bool active = k >= policy.k_start;

        if (active) {
            switch (policy.kind) {
                case PolicyKind::type1_feedforward: {
                    int idx = k - policy.k_start;
                    if (idx < policy.ff_actuator.cols()) {
                        a_act = policy.ff_actuator.col(idx);
                        y_rec += policy.ff_sensor.col(idx);
                    }
                    break;
                }
                case PolicyKind::type2_local_feedback: {
                    if (!hold_captured) {
                        for (int l : policy.attacked.sensors) hold[l] = y_raw(l);
                        hold_captured = true;
                    }
                    a_act(policy.active_actuator) = payload_at(policy, k);
                    for (int j : policy.attacked.actuators) {
                        if (j == policy.active_actuator) continue;
                        int row = b_row(r_true.b, j);
                        a_act(j) = -r_true.a.row(row).dot(x_att) / r_true.b(row, j);
                    }
                    for (int l : policy.attacked.sensors) y_rec(l) = hold[l];
                    break;
                }
                case PolicyKind::type3_replay: {
                    a_act(policy.active_actuator) = payload_at(policy, k);
                    for (size_t li = 0; li < policy.attacked.sensors.size(); ++li)
                        y_rec(policy.attacked.sensors[li]) = policy.recorded[li];
                    break;
                }
            }
        }

        tr.x.col(k) = x_att;
        tr.y_received.col(k) = y_rec;
        tr.residual.col(k) = tr.y_expected.col(k) - y_rec;
        x_nom = r_true.a * x_nom + r_true.b * u_op.col(k);
        x_att = r_true.a * x_att + r_true.b * (u_op.col(k) + a_act);
    }
    return tr;
}

std::vector<double> warmup_record(const Realization& r, const Eigen::VectorXd& x0,
                                  const Eigen::MatrixXd& u_op,
                                  const std::vector<int>& sensors, int steps) {
    Eigen::VectorXd x = x0;
    for (int k = 0; k < steps && k < u_op.cols(); ++k) x = r.a * x + r.b * u_op.col(k);
    Eigen::VectorXd y = r.c * x;
    std::vector<double> out;
    out.reserve(sensors.size());
    for (int l : sensors) out.push_back(y(l));
    return out;
}

Realization adversarial_realization(const StructuralModel& m, int actuator,
                                    const std::vector<int>& path_states, int sensor,
                                    std::uint64_t seed) {
    if (actuator < 0 || actuator >= m.n_u()) throw ValidationError("actuator id out of range");
    if (sensor < 0 || sensor >= m.n_sensors()) throw ValidationError("sensor id out of range");
    if (path_states.empty() || static_cast<int>(path_states.size()) > m.n_x)
        throw ValidationError("path is not a simple directed path");
    if (m.actuator_target[actuator] != path_states.front())
        throw ValidationError("path must start at the actuator's target state");
    for (size_t k = 0; k < path_states.size(); ++k) {
        int s = path_states[k];
        if (s < 0 || s >= m.n_x) throw ValidationError("path state out of range");
        for (size_t j = k + 1; j < path_states.size(); ++j)
            if (path_states[j] == s) throw ValidationError("path is not a simple directed path");
        if (k > 0 && !m.a(s, path_states[k - 1]))
            throw ValidationError("path edge missing in the structural pattern");
    }
    if (m.sensors[sensor].target != path_states.back())
        throw ValidationError("path must end at a state the sensor measures");

    Realization r = random_realization(m, seed);
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5ull);
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    auto strong = [&] { return (rng() & 1) ? mag(rng) : -mag(rng); };

    r.a.row(path_states[0]).setZero();
    for (size_t k = 1; k < path_states.size(); ++k) {
        r.a.row(path_states[k]).setZero();
        r.a(path_states[k], path_states[k - 1]) = strong();
    }
    r.c(sensor, path_states.back()) = strong();
    return r;
}

Eigen::MatrixXd constant_input(const Eigen::VectorXd& u0, int horizon) {
    return u0.replicate(1, horizon);
}

}  // namespace secidx
