#include "cubeplan/planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubeplan/cube_complex.hpp"

namespace cubeplan {

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::Moves: return "moves";
        case Metric::Steps: return "steps";
        case Metric::Time: return "time";
        case Metric::Euclidean: return "euclidean";
    }
    return "?";
}

std::optional<Metric> parse_metric(const std::string& name) {
    if (name == "moves") return Metric::Moves;
    if (name == "steps") return Metric::Steps;
    if (name == "time") return Metric::Time;
    if (name == "euclidean") return Metric::Euclidean;
    return std::nullopt;
}

std::pair<Pip, Bitset> goal_ideal(const Pip& p_u, const Bitset& a, const Bitset& b) {
    if (!is_consistent_ideal(p_u, a) || !is_consistent_ideal(p_u, b))
        throw std::invalid_argument("goal_ideal: endpoints must be consistent ideals");
    return {reroot(p_u, a), reroot_vertex_image(a, b)};
}

std::vector<Bitset> normal_cube_path(const Pip& p, const Bitset& goal) {
    if (!is_consistent_ideal(p, goal))
        throw std::invalid_argument("normal_cube_path: goal must be a consistent ideal");
    std::vector<Bitset> steps;
    Bitset have(p.size());
    while (true) {
        Bitset rem = goal.minus(have);
        if (rem.none()) break;
        Bitset step = p.minimal_of(rem);
        steps.push_back(step);
        have |= step;
    }
    return steps;
}

std::vector<Bitset> reverse_normal_cube_path(const Pip& p, const Bitset& goal) {
    if (!is_consistent_ideal(p, goal))
        throw std::invalid_argument("reverse_normal_cube_path: goal must be a consistent ideal");
    std::vector<Bitset> steps;
    Bitset rem = goal;
    while (rem.any()) {
        Bitset step = p.maximal_of(rem);
        steps.push_back(step);
        rem = rem.minus(step);
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

std::vector<std::size_t> shortest_move_order(const Pip& p, const Bitset& goal) {
    if (!is_consistent_ideal(p, goal))
        throw std::invalid_argument("shortest_move_order: goal must be a consistent ideal");
    std::vector<std::size_t> order;
    Bitset rem = goal;
    while (rem.any()) {
        std::size_t m = p.minimal_of(rem).members().front();
        order.push_back(m);
        rem.reset(m);
    }
    return order;
}

std::size_t makespan(const Pip& p, const Bitset& goal) {
    if (!is_consistent_ideal(p, goal))
        throw std::invalid_argument("makespan: goal must be a consistent ideal");
    return depth(p, goal);
}

namespace {

std::string directional_move_name(const ArmState& u1, const ArmState& u2) {
    std::vector<int> removed, added;
    std::set_difference(u1.verticals.begin(), u1.verticals.end(), u2.verticals.begin(),
                        u2.verticals.end(), std::back_inserter(removed));
    std::set_difference(u2.verticals.begin(), u2.verticals.end(), u1.verticals.begin(),
                        u1.verticals.end(), std::back_inserter(added));
    if (removed.empty() && added.size() == 1 && added[0] == u1.n)
        return "enter@" + std::to_string(u1.n);
    if (added.empty() && removed.size() == 1 && removed[0] == u1.n)
        return "leave@" + std::to_string(u1.n);
    if (removed.size() == 1 && added.size() == 1) {
        if (added[0] == removed[0] - 1) return "hop_left@" + std::to_string(removed[0]);
        if (added[0] == removed[0] + 1) return "hop_right@" + std::to_string(removed[0]);
    }
    throw std::logic_error("states do not differ by one particle move");
}

/// The single transition the move name denotes, if legal at `u` (checked
/// against the system's generators).
std::optional<ArmState> apply_named_move(const ReconfigSystem& sys, const ArmState& u,
                                         const std::string& name,
                                         const Generator** used = nullptr) {
    auto at = name.find('@');
    if (at == std::string::npos) return std::nullopt;
    const std::string op = name.substr(0, at);
    int slot = 0;
    try {
        slot = std::stoi(name.substr(at + 1));
    } catch (...) {
        return std::nullopt;
    }
    ArmState v = u;
    auto& vs = v.verticals;
    auto has = [&](int a) { return std::binary_search(vs.begin(), vs.end(), a); };
    auto drop = [&](int a) { vs.erase(std::find(vs.begin(), vs.end(), a)); };
    auto put = [&](int a) { vs.insert(std::upper_bound(vs.begin(), vs.end(), a), a); };
    if (op == "enter") {
        if (slot != u.n || has(slot)) return std::nullopt;
        put(slot);
    } else if (op == "leave") {
        if (slot != u.n || !has(slot)) return std::nullopt;
        drop(slot);
    } else if (op == "hop_left") {
        if (!has(slot) || slot - 1 < 1 || has(slot - 1)) return std::nullopt;
        drop(slot);
        put(slot - 1);
    } else if (op == "hop_right") {
        if (!has(slot) || slot + 1 > u.n || has(slot + 1)) return std::nullopt;
        drop(slot);
        put(slot + 1);
    } else {
        return std::nullopt;
    }
    // the move must be realized by an actual generator of the system
    RState ru = arm_labels_from_state(u), rv = arm_labels_from_state(v);
    for (const auto& g : sys.generators)
        if (admissible(g, ru) && apply_generator(g, ru) == rv) {
            if (used) *used = &g;
            return v;
        }
    return std::nullopt;
}

Plan assemble_plan(ArmKind kind, int n, const ArmState& from, const ArmState& to, Metric metric,
                   const Pip& p_u, const Bitset& a, const std::vector<Bitset>& element_steps) {
    const ReconfigSystem sys = arm_system(kind, n);
    Plan plan;
    plan.kind = kind;
    plan.n = n;
    plan.start = from;
    plan.goal = to;
    plan.metric = metric;
    plan.trace.push_back(from);
    Bitset have(p_u.size());
    ArmState cur = from;
    for (const auto& step : element_steps) {
        std::vector<std::string> names;
        Bitset partial = have;
        ArmState at = cur;
        step.for_each([&](std::size_t e) {
            partial.set(e);
            ArmState next = arm_ideal_to_state(kind, p_u, n, reroot_vertex_image(a, partial));
            names.push_back(directional_move_name(at, next));
            at = next;
        });
        have |= step;
        cur = arm_ideal_to_state(kind, p_u, n, reroot_vertex_image(a, have));
        plan.steps.push_back(std::move(names));
        plan.trace.push_back(cur);
    }
    if (!(cur == to)) throw std::logic_error("plan does not reach the goal state");
    if (auto err = verify_plan(plan)) throw std::logic_error("plan replay failed: " + *err);
    return plan;
}

}  // namespace

Plan plan_arm(ArmKind kind, int n, const ArmState& from, const ArmState& to, Metric metric,
              const PlanOptions& opts) {
    if (metric == Metric::Euclidean)
        throw UnsupportedMetric(
            "metric 'euclidean' is recognized but not supported: computing Euclidean geodesics "
            "in a cube complex needs a dedicated geodesic algorithm; use moves|steps|time");
    if (!valid_arm_state(kind, from) || !valid_arm_state(kind, to) || from.n != n || to.n != n)
        throw std::invalid_argument("plan_arm: invalid endpoint state");
    Pip p_u = kind == ArmKind::Quadrant ? qp_pip(n) : sp_pip(n);
    Bitset a = arm_state_to_ideal(kind, p_u, from);
    Bitset b = arm_state_to_ideal(kind, p_u, to);
    auto [p_a, goal] = goal_ideal(p_u, a, b);
    std::vector<Bitset> element_steps;
    if (metric == Metric::Moves) {
        for (std::size_t e : shortest_move_order(p_a, goal)) {
            Bitset step(p_a.size());
            step.set(e);
            element_steps.push_back(step);
        }
    } else {
        element_steps =
            opts.reverse_normal ? reverse_normal_cube_path(p_a, goal) : normal_cube_path(p_a, goal);
    }
    return assemble_plan(kind, n, from, to, metric, p_u, a, element_steps);
}

std::vector<Plan> enumerate_move_plans(ArmKind kind, int n, const ArmState& from,
                                       const ArmState& to, std::size_t cap) {
    if (!valid_arm_state(kind, from) || !valid_arm_state(kind, to) || from.n != n || to.n != n)
        throw std::invalid_argument("enumerate_move_plans: invalid endpoint state");
    Pip p_u = kind == ArmKind::Quadrant ? qp_pip(n) : sp_pip(n);
    Bitset a = arm_state_to_ideal(kind, p_u, from);
    Bitset b = arm_state_to_ideal(kind, p_u, to);
    auto [p_a, goal] = goal_ideal(p_u, a, b);
    std::vector<Plan> plans;
    bool overflow = false;
    for_each_linear_extension(p_a, goal, [&](const std::vector<std::size_t>& seq) {
        if (plans.size() >= cap) {
            overflow = true;
            return false;
        }
        std::vector<Bitset> element_steps;
        for (std::size_t e : seq) {
            Bitset step(p_a.size());
            step.set(e);
            element_steps.push_back(step);
        }
        plans.push_back(assemble_plan(kind, n, from, to, Metric::Moves, p_u, a, element_steps));
        return true;
    });
    if (overflow) throw CapExceeded("move plan enumeration exceeds cap");
    return plans;
}

std::optional<std::string> verify_plan(const Plan& plan) {
    if (!valid_arm_state(plan.kind, plan.start) || !valid_arm_state(plan.kind, plan.goal) ||
        plan.start.n != plan.n || plan.goal.n != plan.n)
        return "invalid endpoint state";
    const ReconfigSystem sys = arm_system(plan.kind, plan.n);
    ArmState cur = plan.start;
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const auto& step = plan.steps[k];
        if (step.empty()) return "step " + std::to_string(k) + " is empty";
        std::vector<const Generator*> gens;
        for (const auto& name : step) {
            const Generator* g = nullptr;
            if (!apply_named_move(sys, cur, name, &g))
                return "step " + std::to_string(k) + ": move " + name +
                       " is not admissible at state \"" + format_arm_state(cur) + "\"";
            gens.push_back(g);
        }
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (!commute(*gens[i], *gens[j]))
                    return "step " + std::to_string(k) + ": moves " + step[i] + " and " + step[j] +
                           " do not commute";
        RState r = arm_labels_from_state(cur);
        for (const Generator* g : gens) r = apply_generator(*g, r);
        cur = arm_state_from_labels(plan.n, r);
        if (!valid_arm_state(plan.kind, cur))
            return "step " + std::to_string(k) + " leaves a forbidden state";
    }
    if (!(cur == plan.goal)) return "replay ends at \"" + format_arm_state(cur) + "\", not the goal";
    if (plan.metric == Metric::Moves)
        for (const auto& step : plan.steps)
            if (step.size() != 1) return "moves-metric plan has a non-singleton step";
    return std::nullopt;
}

SystemPlan plan_system(const ReconfigSystem& sys, const RState& from, const RState& to,
                       Metric metric, std::size_t cap) {
    if (metric == Metric::Euclidean)
        throw UnsupportedMetric(
            "metric 'euclidean' is recognized but not supported: computing Euclidean geodesics "
            "in a cube complex needs a dedicated geodesic algorithm; use moves|steps|time");
    auto ex = explore(sys, cap);
    auto c = state_complex(sys, ex, cap);
    auto check = reconstruct_pip(c, ex.seed);
    if (!check.ok())
        throw std::runtime_error("state complex does not admit a PIP: " + check.failure->reason);
    const Pip& p_u = *check.pip;
    auto key_index = [&](const RState& u) {
        auto it = ex.index.find(encode_state(sys, u));
        if (it == ex.index.end()) throw std::invalid_argument("state is not reachable");
        return it->second;
    };
    int vi_from = key_index(from), vi_to = key_index(to);
    Bitset a = check.vertex_ideals[std::size_t(vi_from)];
    Bitset b = check.vertex_ideals[std::size_t(vi_to)];
    auto [p_a, goal] = goal_ideal(p_u, a, b);
    std::vector<Bitset> element_steps;
    if (metric == Metric::Moves) {
        for (std::size_t e : shortest_move_order(p_a, goal)) {
            Bitset step(p_a.size());
            step.set(e);
            element_steps.push_back(step);
        }
    } else {
        element_steps = normal_cube_path(p_a, goal);
    }
    std::unordered_map<Bitset, int, BitsetHash> vertex_of_ideal;
    for (std::size_t v = 0; v < check.vertex_ideals.size(); ++v)
        vertex_of_ideal.emplace(check.vertex_ideals[v], int(v));
    SystemPlan plan;
    plan.metric = metric;
    plan.start = ex.keys[std::size_t(vi_from)];
    plan.goal = ex.keys[std::size_t(vi_to)];
    plan.trace.push_back(plan.start);
    Bitset have(p_u.size());
    int cur = vi_from;
    for (const auto& step : element_steps) {
        std::vector<std::string> names;
        Bitset partial = have;
        int at = cur;
        step.for_each([&](std::size_t e) {
            partial.set(e);
            int next = vertex_of_ideal.at(reroot_vertex_image(a, partial));
            // the unique transition edge gives the generator
            const auto& adj = ex.adj[std::size_t(at)];
            auto it = std::find_if(adj.begin(), adj.end(),
                                   [&](const std::pair<int, int>& e2) { return e2.first == next; });
            if (it == adj.end()) throw std::logic_error("plan step is not a transition edge");
            names.push_back(sys.generators[std::size_t(it->second)].name);
            at = next;
        });
        have |= step;
        cur = vertex_of_ideal.at(reroot_vertex_image(a, have));
        plan.steps.push_back(std::move(names));
        plan.trace.push_back(ex.keys[std::size_t(cur)]);
    }
    if (cur != vi_to) throw std::logic_error("system plan does not reach the goal");
    return plan;
}

}  // namespace cubeplan
