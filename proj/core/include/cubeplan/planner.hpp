#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubeplan/arms.hpp"
#include "cubeplan/pip.hpp"

namespace cubeplan {

enum class Metric { Moves, Steps, Time, Euclidean };

std::string metric_name(Metric m);
std::optional<Metric> parse_metric(const std::string& name);

/// Reroot at `a` and return the rerooted PIP together with the image of `b`
/// under the vertex bijection B -> (I - B_I) u B_J.
std::pair<Pip, Bitset> goal_ideal(const Pip& p_u, const Bitset& a, const Bitset& b);

/// Steps of the normal cube path to `goal`: each step adds all minimal
/// elements not added yet. The number of steps equals depth(goal).
std::vector<Bitset> normal_cube_path(const Pip& p, const Bitset& goal);

/// The reverse normal cube path (peel maximal elements from the goal side,
/// then reverse). Same length, generally different steps.
std::vector<Bitset> reverse_normal_cube_path(const Pip& p, const Bitset& goal);

/// One element per step, each a minimal remaining element; ties broken
/// lexicographically by element id. Length |goal|.
std::vector<std::size_t> shortest_move_order(const Pip& p, const Bitset& goal);

/// Minimum time to reach `goal`, equal to depth(goal); simultaneous moves
/// are free and fractional schedules cannot beat it.
std::size_t makespan(const Pip& p, const Bitset& goal);

/// A reconfiguration plan: each step is a set of simultaneously executed
/// moves, named by generator and slot (e.g. "hop_left@2", "enter@9").
struct Plan {
    ArmKind kind = ArmKind::Quadrant;
    int n = 0;
    ArmState start, goal;
    Metric metric = Metric::Steps;
    std::vector<std::vector<std::string>> steps;
    std::vector<ArmState> trace;  // start, then the state after each step

    std::size_t length() const { return steps.size(); }
};

struct PlanOptions {
    bool reverse_normal = false;
};

/// Optimal plan between two arm states under the chosen metric. Throws
/// UnsupportedMetric for Metric::Euclidean and std::invalid_argument for
/// invalid states.
Plan plan_arm(ArmKind kind, int n, const ArmState& from, const ArmState& to, Metric metric,
              const PlanOptions& opts = {});

/// All optimal move plans (metric = moves); one per linear extension of the
/// goal ideal.
std::vector<Plan> enumerate_move_plans(ArmKind kind, int n, const ArmState& from,
                                       const ArmState& to, std::size_t cap = kDefaultEnumCap);

/// Replay a plan through the particle system: every step must be pairwise
/// commuting and admissible, and the replay must end at the goal. Returns
/// an explanation for the first problem, or nullopt when the plan is good.
std::optional<std::string> verify_plan(const Plan& plan);

/// Planning for a general reconfigurable system: requires the state complex
/// to admit a PIP (reconstruct_pip succeeds), otherwise throws
/// std::runtime_error with the failure reason. Moves are named by generator.
struct SystemPlan {
    std::string start, goal;  // state keys
    Metric metric = Metric::Steps;
    std::vector<std::vector<std::string>> steps;
    std::vector<std::string> trace;
};
SystemPlan plan_system(const ReconfigSystem& sys, const RState& from, const RState& to,
                       Metric metric, std::size_t cap = kDefaultStateCap);

}  // namespace cubeplan
