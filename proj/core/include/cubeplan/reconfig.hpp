#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubeplan/cube_complex.hpp"

namespace cubeplan {

inline constexpr std::size_t kDefaultStateCap = std::size_t(1) << 20;

/// A state is a total labeling of the base graph's vertices by alphabet
/// symbol ranks.
using RState = std::vector<int>;

/// Local reversible move: two labelings of the support that agree outside
/// the trace.
struct Generator {
    std::string name;
    std::vector<int> support;  // vertex ranks, sorted
    std::vector<int> trace;    // subset of support, sorted
    std::vector<int> local0;   // aligned with support
    std::vector<int> local1;
};

struct GraphTopology {
    std::vector<std::string> vertices;  // order fixes the state encoding
    std::vector<std::pair<int, int>> edges;
};

struct ReconfigSystem {
    GraphTopology graph;
    std::vector<std::string> alphabet;
    std::vector<Generator> generators;
    RState seed;
};

/// Structural checks (trace within support, locals agreeing off-trace and
/// differing on it, symbol ranks in range, seed total). Throws
/// std::invalid_argument on the first problem.
void validate_system(const ReconfigSystem& sys);

bool admissible(const Generator& g, const RState& u);
RState apply_generator(const Generator& g, const RState& u);

/// Physically independent moves: each trace avoids the other's support.
bool commute(const Generator& a, const Generator& b);
bool commute(const ReconfigSystem& sys, const std::vector<int>& generator_ranks);

/// Canonical state key used for deterministic ordering and vertex ids.
std::string encode_state(const ReconfigSystem& sys, const RState& u);

struct Exploration {
    std::vector<RState> states;  // BFS layers, each layer sorted by encoding
    std::vector<std::string> keys;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (state, generator), sorted
    std::vector<int> dist;                              // from seed
    int seed = 0;
};

/// BFS closure of the seed under admissible generator applications.
Exploration explore(const ReconfigSystem& sys, std::size_t cap = kDefaultStateCap);

/// The state complex: one k-cube per state and k-subset of pairwise
/// commuting generators admissible there, rooted at the seed.
CubeComplex state_complex(const ReconfigSystem& sys, const Exploration& ex,
                          std::size_t cube_cap = kDefaultStateCap);
CubeComplex state_complex(const ReconfigSystem& sys, std::size_t cap = kDefaultStateCap);

/// p <= q iff some shortest edge-path from the home state to q passes
/// through p, i.e. d(home,p) + d(p,q) = d(home,q).
struct StateOrder {
    int home = 0;
    std::vector<int> dist;     // from home
    std::vector<Bitset> leq;   // leq[p].test(q)  <=>  p <= q
    bool less(int p, int q) const { return p != q && leq[std::size_t(p)].test(std::size_t(q)); }
};
StateOrder home_order(const Exploration& ex, int home);
StateOrder home_order(const ReconfigSystem& sys, const RState& home,
                      std::size_t cap = kDefaultStateCap);

/// Cover pairs (p,q) of the order, q covering p.
std::vector<std::pair<int, int>> order_covers(const StateOrder& ord);

}  // namespace cubeplan
