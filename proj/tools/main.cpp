// cubeplan: build reconfigurable systems, inspect PIPs and cube complexes,
// and compute provably optimal reconfiguration plans.
//
// Exit codes: 0 ok, 2 validation error, 3 cap exceeded, 4 not CAT(0).

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cubeplan/arms.hpp"
#include "cubeplan/cube_complex.hpp"
#include "cubeplan/planner.hpp"
#include "cubeplan/serialize.hpp"

using namespace cubeplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;
constexpr int kExitNotCatZero = 4;

ArmKind parse_kind(const std::string& type) {
    if (type == "quadrant") return ArmKind::Quadrant;
    if (type == "strip") return ArmKind::Strip;
    throw std::invalid_argument("unknown robot type \"" + type + "\" (quadrant|strip)");
}

std::string pretty_state(const ArmState& s) {
    std::string txt = format_arm_state(s);
    return txt.empty() ? "-" : txt;
}

std::string pip_pretty(const Pip& p) {
    std::ostringstream out;
    out << "elements (" << p.size() << "):";
    for (const auto& id : p.elements()) out << " " << id;
    out << "\n";
    // height levels, longest-chain-below
    std::vector<std::size_t> level(p.size(), 0);
    std::size_t height = 0;
    for (std::size_t e : p.topo_order()) {
        Bitset below = p.down_set(e);
        below.reset(e);
        std::size_t l = 0;
        below.for_each([&](std::size_t d) { l = std::max(l, level[d] + 1); });
        level[e] = l;
        height = std::max(height, l);
    }
    for (std::size_t l = height + 1; l-- > 0;) {
        out << "level " << l << ":";
        for (std::size_t e = 0; e < p.size(); ++e)
            if (level[e] == l) out << " " << p.id(e);
        out << "\n";
    }
    out << "covers:\n";
    auto covers = p.cover_pairs();
    std::vector<std::pair<std::string, std::string>> named;
    for (auto [a, b] : covers) named.push_back({p.id(a), p.id(b)});
    std::sort(named.begin(), named.end());
    for (auto& [a, b] : named) out << "  " << a << " < " << b << "\n";
    out << "inconsistent (minimal, dotted):\n";
    for (auto [a, b] : p.minimal_inconsistent_pairs())
        out << "  " << p.id(a) << " ~ " << p.id(b) << "\n";
    return out.str();
}

int report_violation(const PipViolation& v) {
    std::cout << "violation of " << v.axiom << ": " << v.message << "\n";
    return kExitInvalid;
}

struct CapFlags {
    std::size_t max_states = kDefaultStateCap;
    std::size_t max_ideals = kDefaultIdealCap;
    std::size_t max_enum = std::size_t(1) << 14;
};

void add_cap_flags(CLI::App* cmd, CapFlags& caps) {
    cmd->add_option("--max-states", caps.max_states, "state exploration cap");
    cmd->add_option("--max-ideals", caps.max_ideals, "ideal/cube enumeration cap");
    cmd->add_option("--max-plans", caps.max_enum, "plan enumeration cap");
}

int run(int argc, char** argv) {
    CLI::App app{"combinatorial motion planning for reconfigurable systems"};
    app.require_subcommand(1);
    CapFlags caps;

    // ---- pip ----
    auto* pip_cmd = app.add_subcommand("pip", "inspect and transform PIP files");
    pip_cmd->require_subcommand(1);
    std::string pip_in, pip_out;
    std::vector<std::string> pip_at;
    bool as_json = false;

    auto* pip_show = pip_cmd->add_subcommand("show", "print a PIP");
    pip_show->add_option("--in", pip_in, "input .pip.json file")->required();
    pip_show->add_flag("--json", as_json, "normalized JSON instead of text art");

    auto* pip_validate = pip_cmd->add_subcommand("validate", "check the PIP axioms");
    pip_validate->add_option("--in", pip_in, "input .pip.json file")->required();

    auto* pip_reroot = pip_cmd->add_subcommand("reroot", "reroot at a consistent ideal");
    pip_reroot->add_option("--in", pip_in, "input .pip.json file")->required();
    pip_reroot->add_option("--at", pip_at, "ideal as element ids (omit for the empty ideal)");
    pip_reroot->add_option("--out", pip_out, "write the rerooted PIP here");
    pip_reroot->add_flag("--json", as_json, "print normalized JSON instead of text art");

    // ---- robot ----
    auto* robot = app.add_subcommand("robot", "the two arm models");
    robot->require_subcommand(1);
    std::string type = "quadrant", from_text, to_text, metric_text = "steps", plan_file, out_file;
    int n = 1, snake_len = 1, snake_rows = 1, snake_cols = 1;
    bool enumerate = false, verify = false, reverse_normal = false;

    auto* plan_cmd = robot->add_subcommand("plan", "optimal plan between two states");
    plan_cmd->add_option("--type", type, "quadrant|strip")->required();
    plan_cmd->add_option("--n", n, "arm length")->required();
    plan_cmd->add_option("--from", from_text, "start state (digit string)");
    plan_cmd->add_option("--to", to_text, "goal state (digit string)");
    plan_cmd->add_option("--metric", metric_text, "moves|steps|time");
    plan_cmd->add_flag("--enumerate", enumerate, "enumerate all optimal move plans");
    plan_cmd->add_flag("--verify", verify, "replay the plan before printing");
    plan_cmd->add_flag("--reverse-normal", reverse_normal, "use the reverse normal cube path");
    plan_cmd->add_flag("--json", as_json, "emit plan JSON");
    plan_cmd->add_option("--out", out_file, "write plan JSON here");
    add_cap_flags(plan_cmd, caps);

    auto* verify_cmd = robot->add_subcommand("verify", "replay a plan file");
    verify_cmd->add_option("--plan", plan_file, "plan JSON file")->required();

    auto* system_cmd = robot->add_subcommand("system", "emit a system description file");
    system_cmd->add_option("--type", type, "quadrant|strip|snake")->required();
    system_cmd->add_option("--n", n, "arm length");
    system_cmd->add_option("--len", snake_len, "snake length");
    system_cmd->add_option("--rows", snake_rows, "snake grid rows");
    system_cmd->add_option("--cols", snake_cols, "snake grid cols");
    system_cmd->add_option("--out", out_file, "output file");

    auto* robot_pip = robot->add_subcommand("pip", "emit the arm's remote-control PIP");
    robot_pip->add_option("--type", type, "quadrant|strip")->required();
    robot_pip->add_option("--n", n, "arm length")->required();
    robot_pip->add_option("--out", out_file, "output file (.pip.json)");

    // ---- count ----
    auto* count = app.add_subcommand("count", "cube and state counts");
    count->require_subcommand(1);
    auto* count_cubes = count->add_subcommand("cubes", "d-cube counts by enumeration and series");
    count_cubes->add_option("--type", type, "quadrant|strip")->required();
    count_cubes->add_option("--n", n, "arm length")->required();
    count_cubes->add_option("--max-paths", caps.max_ideals, "path enumeration cap");
    auto* count_states = count->add_subcommand("states", "number of states");
    count_states->add_option("--type", type, "quadrant|strip")->required();
    count_states->add_option("--n", n, "arm length")->required();
    count_states->add_option("--max-paths", caps.max_ideals, "path enumeration cap");

    // ---- complex ----
    auto* complex_cmd = app.add_subcommand("complex", "state complexes");
    complex_cmd->require_subcommand(1);
    std::string system_file, complex_file, root_state;

    auto* cx_build = complex_cmd->add_subcommand("build", "explore a system and emit its complex");
    cx_build->add_option("--system", system_file, "system JSON file")->required();
    cx_build->add_option("--out", out_file, "output file");
    add_cap_flags(cx_build, caps);

    auto* cx_fvec = complex_cmd->add_subcommand("fvector", "CSV cube counts by dimension");
    cx_fvec->add_option("--system", system_file, "system JSON file");
    cx_fvec->add_option("--complex", complex_file, "complex JSON file");
    add_cap_flags(cx_fvec, caps);

    auto* cx_check = complex_cmd->add_subcommand("check-cat0",
                                                 "decide whether the state complex admits a PIP");
    cx_check->add_option("--system", system_file, "system JSON file")->required();
    cx_check->add_option("--root", root_state, "root state key (default: seed)");
    cx_check->add_flag("--json", as_json, "emit the PIP as JSON");
    add_cap_flags(cx_check, caps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    if (pip_show->parsed()) {
        Pip p = pip_from_json(read_file(pip_in));
        if (auto v = validate(p)) return report_violation(*v);
        std::cout << (as_json ? pip_to_json(p) : pip_pretty(p));
        return kExitOk;
    }
    if (pip_validate->parsed()) {
        Pip p = pip_from_json(read_file(pip_in));
        if (auto v = validate(p)) return report_violation(*v);
        std::cout << "ok\n";
        return kExitOk;
    }
    if (pip_reroot->parsed()) {
        Pip p = pip_from_json(read_file(pip_in));
        if (auto v = validate(p)) return report_violation(*v);
        std::vector<std::string> ids;
        for (const auto& id : pip_at)
            if (!id.empty()) ids.push_back(id);
        Bitset ideal = p.make_set(ids);
        if (!is_consistent_ideal(p, ideal))
            throw std::invalid_argument("--at is not a consistent ideal");
        Pip rerooted = reroot(p, ideal);
        if (!pip_out.empty()) write_file(pip_out, pip_to_json(rerooted));
        std::cout << (as_json ? pip_to_json(rerooted) : pip_pretty(rerooted));
        return kExitOk;
    }

    if (plan_cmd->parsed()) {
        ArmKind kind = parse_kind(type);
        auto metric = parse_metric(metric_text);
        if (!metric) throw std::invalid_argument("unknown metric \"" + metric_text + "\"");
        ArmState from = parse_arm_state(kind, n, from_text);
        ArmState to = parse_arm_state(kind, n, to_text);
        if (enumerate) {
            if (*metric != Metric::Moves)
                throw std::invalid_argument("--enumerate is for --metric moves");
            auto plans = enumerate_move_plans(kind, n, from, to, caps.max_enum);
            std::cerr << plans.size() << " optimal move plans\n";
            for (const auto& plan : plans) {
                if (as_json) {
                    std::cout << plan_to_json(plan);
                } else {
                    for (const auto& step : plan.steps) std::cout << " " << step[0];
                    std::cout << "\n";
                }
            }
            return kExitOk;
        }
        PlanOptions opts;
        opts.reverse_normal = reverse_normal;
        Plan plan = plan_arm(kind, n, from, to, *metric, opts);
        if (verify) {
            if (auto err = verify_plan(plan)) throw std::invalid_argument("verify: " + *err);
            std::cerr << "plan verified by replay\n";
        }
        if (!out_file.empty()) write_file(out_file, plan_to_json(plan));
        if (as_json) {
            std::cout << plan_to_json(plan);
        } else {
            std::cout << "optimal " << metric_text << " plan, length " << plan.length() << "\n";
            for (std::size_t k = 0; k < plan.steps.size(); ++k) {
                std::cout << "  " << pretty_state(plan.trace[k]) << " -> "
                          << pretty_state(plan.trace[k + 1]) << "  [";
                for (std::size_t i = 0; i < plan.steps[k].size(); ++i)
                    std::cout << (i ? " " : "") << plan.steps[k][i];
                std::cout << "]\n";
            }
        }
        return kExitOk;
    }
    if (verify_cmd->parsed()) {
        Plan plan = plan_from_json(read_file(plan_file));
        if (auto err = verify_plan(plan)) {
            std::cout << "plan is not valid: " << *err << "\n";
            return kExitInvalid;
        }
        std::cout << "plan ok: " << metric_name(plan.metric) << " plan of length "
                  << plan.length() << " from \"" << pretty_state(plan.start) << "\" to \""
                  << pretty_state(plan.goal) << "\"\n";
        return kExitOk;
    }
    if (system_cmd->parsed()) {
        ReconfigSystem sys;
        if (type == "snake")
            sys = snake_system(snake_len, snake_rows, snake_cols);
        else
            sys = arm_system(parse_kind(type), n);
        std::string text = system_to_json(sys);
        if (!out_file.empty())
            write_file(out_file, text);
        else
            std::cout << text;
        return kExitOk;
    }
    if (robot_pip->parsed()) {
        ArmKind kind = parse_kind(type);
        std::string text = pip_to_json(kind == ArmKind::Quadrant ? qp_pip(n) : sp_pip(n));
        if (!out_file.empty())
            write_file(out_file, text);
        else
            std::cout << text;
        return kExitOk;
    }

    if (count_cubes->parsed()) {
        ArmKind kind = parse_kind(type);
        auto counts = cube_counts(n, kind, caps.max_ideals);
        std::cout << "n,d,count\n";
        for (std::size_t d = 0; d < counts.size(); ++d)
            std::cout << n << "," << d << "," << counts[d].str() << "\n";
        return kExitOk;
    }
    if (count_states->parsed()) {
        ArmKind kind = parse_kind(type);
        auto counts = cube_counts(n, kind, caps.max_ideals);
        std::cout << "n,count\n" << n << "," << counts[0].str() << "\n";
        return kExitOk;
    }

    if (cx_build->parsed()) {
        ReconfigSystem sys = system_from_json(read_file(system_file));
        CubeComplex c = state_complex(sys, caps.max_states);
        std::string text = complex_to_json(c);
        if (!out_file.empty())
            write_file(out_file, text);
        else
            std::cout << text;
        return kExitOk;
    }
    if (cx_fvec->parsed()) {
        CubeComplex c;
        if (!complex_file.empty()) {
            c = complex_from_json(read_file(complex_file));
        } else if (!system_file.empty()) {
            c = state_complex(system_from_json(read_file(system_file)), caps.max_states);
        } else {
            throw std::invalid_argument("fvector needs --system or --complex");
        }
        std::cout << fvector_csv(f_vector(c));
        return kExitOk;
    }
    if (cx_check->parsed()) {
        ReconfigSystem sys = system_from_json(read_file(system_file));
        auto ex = explore(sys, caps.max_states);
        CubeComplex c = state_complex(sys, ex, caps.max_states);
        int root = ex.seed;
        if (!root_state.empty()) {
            auto it = ex.index.find(root_state);
            if (it == ex.index.end())
                throw std::invalid_argument("--root is not a reachable state key");
            root = it->second;
        }
        auto result = reconstruct_pip(c, root);
        if (!result.ok()) {
            std::cout << "NOT CAT(0): " << result.failure->reason << "\n";
            if (!result.failure->witnesses.empty()) {
                std::cout << "witness vertices:";
                for (const auto& w : result.failure->witnesses) std::cout << " \"" << w << "\"";
                std::cout << "\n";
            }
            if (result.failure->unfilled_square) {
                std::cout << "unfilled 4-cycle:";
                for (int v : *result.failure->unfilled_square)
                    std::cout << " \"" << c.vertex_ids[std::size_t(v)] << "\"";
                std::cout << "\n";
            }
            return kExitNotCatZero;
        }
        std::cout << "CAT(0): state complex is the rooted cube complex of this PIP\n";
        std::cout << (as_json ? pip_to_json(*result.pip) : pip_pretty(*result.pip));
        return kExitOk;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const UnsupportedMetric& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
