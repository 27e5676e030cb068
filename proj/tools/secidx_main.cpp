// secidx: security-index toolkit for linear networked control systems.
//
// Subcommands: index-exact, index-robust, place, simulate, xset, dump-graph.
// Human output uses 1-based component names (u1, y1, x1); --json emits a
// machine schema with 0-based ids. SECIDX_SEED overrides --seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "secidx/exact_index.hpp"
#include "secidx/placement.hpp"
#include "secidx/robust_index.hpp"
#include "secidx/scenario.hpp"

namespace {

using nlohmann::json;
using namespace secidx;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInfeasible = 4;

struct CommonOpts {
    std::string model_path;
    bool as_json = false;
    std::uint64_t seed = 0;
    int jobs = 1;
    int actuator = 0;  // 1-based; 0 = all
};

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("SECIDX_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return flag_seed;
}

std::string uname(int i) { return "u" + std::to_string(i + 1); }
std::string yname(int l) { return "y" + std::to_string(l + 1); }
std::string xname(int s) { return "x" + std::to_string(s + 1); }

std::string set_string(const ComponentSet& set) {
    std::string out = "{";
    bool first = true;
    for (int i : set.actuators) {
        out += (first ? "" : ",") + uname(i);
        first = false;
    }
    for (int l : set.sensors) {
        out += (first ? "" : ",") + yname(l);
        first = false;
    }
    return out + "}";
}

json set_json(const ComponentSet& set) {
    return {{"actuators", set.actuators}, {"sensors", set.sensors}};
}

json report_shell(const std::string& command, const StructuralModel& m,
                  const std::optional<Realization>& r) {
    return {{"command", command},
            {"tool_version", kVersion},
            {"model_hash", model_hash(m, r)}};
}

std::vector<int> selected_actuators(const StructuralModel& m, int actuator_flag) {
    if (actuator_flag > 0) {
        if (actuator_flag > m.n_u())
            throw ValidationError("actuator id out of range (model has " +
                                  std::to_string(m.n_u()) + " actuators)");
        return {actuator_flag - 1};
    }
    std::vector<int> all(m.n_u());
    for (int i = 0; i < m.n_u(); ++i) all[i] = i;
    return all;
}

/// Runs fn(i) for every id in `ids` on up to `jobs` threads; results land in
/// id order regardless of completion order.
template <typename R, typename Fn>
std::vector<R> run_per_actuator(const std::vector<int>& ids, int jobs, Fn fn) {
    std::vector<R> out(ids.size());
    if (jobs <= 1 || ids.size() <= 1) {
        for (size_t k = 0; k < ids.size(); ++k) out[k] = fn(ids[k]);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t k = w; k < ids.size(); k += jobs) out[k] = fn(ids[k]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

int cmd_index_exact(const CommonOpts& opt, std::optional<int> budget) {
    LoadedModel lm = load_model(opt.model_path);
    if (!lm.realization)
        throw ValidationError("index-exact needs a model file with a realization");
    const std::uint64_t seed = effective_seed(opt.seed);
    std::vector<int> ids = selected_actuators(lm.model, opt.actuator);
    auto reports = run_per_actuator<IndexReport>(
        ids, opt.jobs, [&](int i) { return delta(*lm.realization, i, budget, seed); });

    if (opt.as_json) {
        json j = report_shell("index-exact", lm.model, lm.realization);
        j["seed"] = seed;
        json results = json::array();
        for (const auto& rep : reports) {
            json e = {{"actuator", rep.actuator}, {"borderline", rep.borderline}};
            switch (rep.value.kind) {
                case IndexValue::Kind::finite: e["value"] = rep.value.value; break;
                case IndexValue::Kind::infinite: e["value"] = "inf"; break;
                case IndexValue::Kind::at_least: e["value"] = {{"at_least", rep.value.value}}; break;
            }
            if (rep.witness) e["witness"] = set_json(*rep.witness);
            results.push_back(e);
        }
        j["results"] = results;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            std::cout << uname(rep.actuator) << ": ";
            switch (rep.value.kind) {
                case IndexValue::Kind::finite:
                    std::cout << rep.value.value;
                    if (rep.witness) std::cout << " " << set_string(*rep.witness);
                    break;
                case IndexValue::Kind::infinite: std::cout << "inf"; break;
                case IndexValue::Kind::at_least:
                    std::cout << ">= " << rep.value.value << " (budget reached, possibly inf)";
                    break;
            }
            if (rep.borderline) std::cout << "  [borderline rank test]";
            std::cout << "\n";
        }
    }
    return 0;
}

void print_flow_network(std::ostream& out, const StructuralModel& m, int u_i) {
    ExtendedGraph g = build_extended_graph(m);
    FlowNetwork net = build_flow_network(g, u_i);
    auto node_name = [&](int node) -> std::string {
        if (node == net.source) return "s";
        if (node == net.sink) return "t";
        for (int s = 0; s < m.n_x; ++s) {
            if (net.type1[s]) {
                if (net.node_in[s] == node) return xname(s) + "_in";
                if (net.node_out[s] == node) return xname(s) + "_out";
            } else if (net.node_in[s] == node) {
                return xname(s);
            }
        }
        return "?" + std::to_string(node);
    };
    for (const auto& arc : net.arcs) {
        out << node_name(arc.from) << " " << node_name(arc.to) << " ";
        if (arc.infinite) out << "inf";
        else out << arc.cap;
        out << "\n";
    }
}

int cmd_index_robust(const CommonOpts& opt, bool dump_graph) {
    LoadedModel lm = load_model(opt.model_path);
    std::vector<int> ids = selected_actuators(lm.model, opt.actuator);
    auto reports = run_per_actuator<RobustReport>(ids, opt.jobs,
                                                  [&](int i) { return delta_r(lm.model, i); });
    if (opt.as_json) {
        json j = report_shell("index-robust", lm.model, lm.realization);
        json results = json::array();
        for (const auto& rep : reports) {
            json e = {{"actuator", rep.actuator}};
            if (rep.value.infinite) {
                e["value"] = "inf";
            } else {
                e["value"] = rep.value.value;
                e["witness"] = set_json(rep.witness);
                e["separator"] = {{"states", rep.separator_states},
                                  {"sensors", rep.separator_sensors}};
            }
            results.push_back(e);
        }
        j["results"] = results;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            std::cout << uname(rep.actuator) << ": ";
            if (rep.value.infinite) {
                std::cout << "inf\n";
                continue;
            }
            std::cout << rep.value.value << " " << set_string(rep.witness) << "  separator {";
            bool first = true;
            for (int s : rep.separator_states) {
                std::cout << (first ? "" : ",") << xname(s);
                first = false;
            }
            for (int l : rep.separator_sensors) {
                std::cout << (first ? "" : ",") << yname(l);
                first = false;
            }
            std::cout << "}\n";
        }
    }
    if (dump_graph) {
        for (int i : ids) {
            std::cout << "# network for " << uname(i) << "\n";
            print_flow_network(std::cout, lm.model, i);
        }
    }
    return 0;
}

int cmd_dump_graph(const CommonOpts& opt) {
    LoadedModel lm = load_model(opt.model_path);
    std::vector<int> ids = selected_actuators(lm.model, opt.actuator);
    for (int i : ids) {
        if (ids.size() > 1) std::cout << "# network for " << uname(i) << "\n";
        print_flow_network(std::cout, lm.model, i);
    }
    return 0;
}

int cmd_place(const CommonOpts& opt, const std::string& request_path) {
    LoadedModel lm = load_model(opt.model_path);
    std::ifstream in(request_path);
    if (!in) throw SchemaError("cannot open request file: " + request_path);
    std::stringstream ss;
    ss << in.rdbuf();
    json req;
    try {
        req = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw SchemaError(request_path + ": " + std::string(e.what()));
    }

    PlacementInstance inst;
    inst.model = lm.model;
    bool protected_problem = false;
    try {
        protected_problem = req.value("protected", false);
        inst.k.assign(lm.model.n_u(), 0);
        const json k_map = req.value("k", json::object());
        for (const auto& [key, val] : k_map.items()) {
            int id = std::stoi(key);
            if (id < 0 || id >= lm.model.n_u())
                throw ValidationError("placement request: actuator id out of range in 'k'");
            inst.k[id] = val.get<int>();
            if (inst.k[id] < 0) throw ValidationError("placement request: k must be >= 0");
        }
        if (req.contains("candidates")) {
            for (const auto& v : req["candidates"]) {
                int s = v.get<int>();
                if (s < 0 || s >= lm.model.n_x)
                    throw ValidationError("placement request: candidate state out of range");
                inst.candidate_states.push_back(s);
            }
        } else {
            inst.candidate_states = default_candidates(lm.model);
        }
        inst.k_max = req.value("k_max", 0);
        if (inst.k_max < 0) throw ValidationError("placement request: k_max must be >= 0");
        const json u_p_list = req.value("u_p", json::array());
        for (const auto& v : u_p_list) {
            int id = v.get<int>();
            if (id < 0 || id >= lm.model.n_u())
                throw ValidationError("placement request: actuator id out of range in 'u_p'");
            inst.u_p.push_back(id);
        }
    } catch (const json::exception& e) {
        throw SchemaError(request_path + ": " + std::string(e.what()));
    }

    json j = report_shell("place", lm.model, lm.realization);
    if (protected_problem) {
        GreedyProtectedResult res = greedy_protected(inst);
        if (opt.as_json) {
            j["problem"] = "protected";
            j["states"] = res.states;
            j["value"] = res.value;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "protected placement:";
            for (int s : res.states) std::cout << " " << xname(s);
            if (res.states.empty()) std::cout << " (none)";
            std::cout << "\ncovered actuators: " << res.value << "\n";
        }
    } else {
        GreedyUnprotectedResult res = greedy_unprotected(inst);
        if (opt.as_json) {
            j["problem"] = "unprotected";
            json chosen = json::array();
            for (int c : res.chosen) chosen.push_back(inst.candidate_states[c]);
            j["states"] = chosen;
            j["achieved"] = res.achieved;
            j["certificate"] = res.certificate;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "unprotected placement:";
            for (int c : res.chosen) std::cout << " " << xname(inst.candidate_states[c]);
            if (res.chosen.empty()) std::cout << " (none)";
            std::cout << "\nachieved gain: " << res.achieved
                      << "\nguarantee certificate H(max gain): " << res.certificate << "\n";
        }
    }
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_csv, bool as_json) {
    Scenario s = load_scenario(scenario_path);
    AttackTrace tr = run_scenario(s);
    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        if (!out) throw ValidationError("cannot write trace file: " + out_csv);
        out << tr.to_csv();
    }
    if (as_json) {
        json j = report_shell("simulate", s.model, s.realization);
        j["scenario"] = scenario_path;
        j["horizon"] = tr.horizon;
        j["max_residual"] = tr.max_residual();
        if (!out_csv.empty()) j["trace"] = out_csv;
        std::cout << j.dump(2) << "\n";
    } else {
        std::ostringstream line;
        line.precision(12);
        line << "max |residual| over " << tr.horizon << " steps: " << tr.max_residual();
        std::cout << line.str() << "\n";
        if (!out_csv.empty()) std::cout << "trace written to " << out_csv << "\n";
    }
    return 0;
}

int cmd_xset(const CommonOpts& opt) {
    LoadedModel lm = load_model(opt.model_path);
    std::vector<int> ids = selected_actuators(lm.model, opt.actuator);
    if (opt.as_json) {
        json j = report_shell("xset", lm.model, lm.realization);
        json results = json::array();
        for (int i : ids) {
            XSet xs = x_set(lm.model, i);
            results.push_back({{"actuator", i}, {"states", xs.states}});
        }
        j["results"] = results;
        std::cout << j.dump(2) << "\n";
    } else {
        for (int i : ids) {
            XSet xs = x_set(lm.model, i);
            std::cout << uname(i) << ": {";
            bool first = true;
            for (int s : xs.states) {
                std::cout << (first ? "" : ",") << xname(s);
                first = false;
            }
            std::cout << "}\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Actuator security indices, sensor placement, and attack simulation "
                 "for linear networked control systems"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts opt;
    std::optional<int> budget;
    bool dump_graph = false;
    std::string request_path, scenario_path, out_csv;
    bool sim_json = false;

    auto add_common = [&](CLI::App* sub, bool with_actuator = true) {
        sub->add_flag("--json", opt.as_json, "emit machine-readable JSON (0-based ids)");
        if (with_actuator)
            sub->add_option("--actuator", opt.actuator, "1-based actuator id (default: all)");
    };

    auto* exact = app.add_subcommand("index-exact", "exact security index per actuator");
    exact->add_option("model", opt.model_path, "model file with realization")->required();
    add_common(exact);
    int budget_flag = -1;
    exact->add_option("--budget", budget_flag, "cap the searched set cardinality");
    exact->add_option("--seed", opt.seed, "sample-point seed (SECIDX_SEED overrides)");
    exact->add_option("--jobs", opt.jobs, "worker threads for per-actuator runs");

    auto* robust = app.add_subcommand("index-robust", "robust (structural) security index");
    robust->add_option("model", opt.model_path, "model file")->required();
    add_common(robust);
    robust->add_flag("--dump-graph", dump_graph, "also print the per-actuator flow network");
    robust->add_option("--jobs", opt.jobs, "worker threads for per-actuator runs");

    auto* place = app.add_subcommand("place", "greedy sensor placement");
    place->add_option("model", opt.model_path, "model file")->required();
    place->add_option("request", request_path, "placement request file")->required();
    add_common(place, false);

    auto* sim = app.add_subcommand("simulate", "run an attack scenario");
    sim->add_option("scenario", scenario_path, "scenario file")->required();
    sim->add_option("--out", out_csv, "write the trace CSV here");
    sim->add_flag("--json", sim_json, "emit machine-readable JSON");

    auto* xset_cmd = app.add_subcommand("xset", "states where new sensors provably help");
    xset_cmd->add_option("model", opt.model_path, "model file")->required();
    add_common(xset_cmd);

    auto* dump = app.add_subcommand("dump-graph", "print flow networks as edge lists");
    dump->add_option("model", opt.model_path, "model file")->required();
    dump->add_option("--actuator", opt.actuator, "1-based actuator id (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    if (budget_flag >= 0) budget = budget_flag;
    try {
        if (exact->parsed()) return cmd_index_exact(opt, budget);
        if (robust->parsed()) return cmd_index_robust(opt, dump_graph);
        if (place->parsed()) return cmd_place(opt, request_path);
        if (sim->parsed()) return cmd_simulate(scenario_path, out_csv, sim_json);
        if (xset_cmd->parsed()) return cmd_xset(opt);
        if (dump->parsed()) return cmd_dump_graph(opt);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
