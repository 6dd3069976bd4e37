#include <algorithm>
#include <set>

#include "cubeplan/arms.hpp"
#include "cubeplan/reconfig.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cubeplan;

namespace {

const Generator& generator_named(const ReconfigSystem& sys, const std::string& name) {
    for (const auto& g : sys.generators)
        if (g.name == name) return g;
    throw std::runtime_error("no generator " + name);
}

std::vector<std::vector<int>> plain_adjacency(const Exploration& ex) {
    std::vector<std::vector<int>> adj(ex.states.size());
    for (std::size_t u = 0; u < ex.adj.size(); ++u) {
        std::set<int> nb;
        for (auto [v, g] : ex.adj[u]) nb.insert(v);
        adj[u].assign(nb.begin(), nb.end());
    }
    return adj;
}

}  // namespace

TEST_CASE("admissibility and application on the quadrant arm") {
    auto sys = quadrant_system(2);
    const auto& hop = generator_named(sys, "hop@1");
    RState en = arm_labels_from_state({2, {2}});  // EN: particle at slot 2
    CHECK(admissible(hop, en));
    RState ne = apply_generator(hop, en);
    CHECK(arm_state_from_labels(2, ne).verticals == std::vector<int>{1});
    CHECK(apply_generator(hop, ne) == en);  // involution
    RState ee = arm_labels_from_state({2, {}});
    CHECK(!admissible(hop, ee));
}

TEST_CASE("repellent particles hop only with a free flank") {
    auto sys = strip_system(3);
    const auto& hop = generator_named(sys, "hop@1");
    CHECK(admissible(hop, arm_labels_from_state({3, {1}})));
    CHECK(arm_state_from_labels(3, apply_generator(hop, arm_labels_from_state({3, {1}})))
              .verticals == std::vector<int>{2});
    // a particle at slot 3 blocks the 2<->1 hop
    CHECK(!admissible(hop, arm_labels_from_state({3, {1, 3}})));
}

TEST_CASE("commutation is trace-support disjointness") {
    auto sys = quadrant_system(3);
    const auto& hop = generator_named(sys, "hop@1");
    const auto& end = generator_named(sys, "end@3");
    CHECK(commute(hop, end));
    CHECK(!commute(hop, hop));
    const auto& hop2 = generator_named(sys, "hop@2");
    CHECK(!commute(hop, hop2));
    CHECK(commute(sys, {0, 2}));
    CHECK(!commute(sys, {0, 1, 2}));
}

TEST_CASE("exploration counts: 2^n and Fibonacci") {
    for (int n = 1; n <= 6; ++n)
        CHECK(explore(quadrant_system(n)).states.size() == std::size_t(1) << n);
    for (int n = 1; n <= 8; ++n)
        CHECK(explore(strip_system(n)).states.size() == fibonacci(n + 2));
}

TEST_CASE("exploration respects the cap") {
    CHECK_THROWS_AS(explore(quadrant_system(4), 5), CapExceeded);
}

TEST_CASE("exploration order is deterministic and BFS-layered") {
    auto ex = explore(quadrant_system(3));
    auto ex2 = explore(quadrant_system(3));
    CHECK(ex.keys == ex2.keys);
    for (std::size_t v = 0; v + 1 < ex.dist.size(); ++v) CHECK(ex.dist[v] <= ex.dist[v + 1]);
    CHECK(ex.keys[0] == "000");
}

TEST_CASE("transition graph is simple") {
    for (const auto& sys : {quadrant_system(4), strip_system(5)}) {
        auto ex = explore(sys);
        for (std::size_t u = 0; u < ex.adj.size(); ++u) {
            std::set<int> seen;
            for (auto [v, g] : ex.adj[u]) {
                CHECK(int(u) != v);
                CHECK(seen.insert(v).second);  // no parallel edges
            }
        }
    }
}

TEST_CASE("state complex f-vectors match the series coefficients") {
    auto pad = [](std::vector<std::size_t> f, std::size_t k) {
        f.resize(std::max(f.size(), k), 0);
        return f;
    };
    CHECK(pad(f_vector(state_complex(quadrant_system(2))), 3) ==
          std::vector<std::size_t>{4, 3, 0});
    for (int n = 1; n <= 6; ++n) {
        for (ArmKind kind : {ArmKind::Quadrant, ArmKind::Strip}) {
            auto counts = cube_counts_by_series(n, kind);
            auto f = f_vector(state_complex(arm_system(kind, n)));
            f.resize(std::max(f.size(), counts.size()), 0);
            counts.resize(f.size(), 0);
            for (std::size_t d = 0; d < f.size(); ++d) CHECK(BigInt(f[d]) == counts[d]);
        }
    }
}

TEST_CASE("cubes satisfy the diamond property") {
    auto sys = strip_system(5);
    auto ex = explore(sys);
    auto c = state_complex(sys, ex);
    for (const auto& cube : c.cubes) {
        if (cube.size() != 4) continue;
        // opposite corners reached by applying the two moves in either order
        const RState& u = ex.states[std::size_t(cube[0])];
        std::vector<int> gens;
        for (auto [v, g] : ex.adj[std::size_t(cube[0])])
            if (std::find(cube.begin(), cube.end(), v) != cube.end()) gens.push_back(g);
        REQUIRE(gens.size() == 2);
        RState ab = apply_generator(sys.generators[std::size_t(gens[1])],
                                    apply_generator(sys.generators[std::size_t(gens[0])], u));
        RState ba = apply_generator(sys.generators[std::size_t(gens[0])],
                                    apply_generator(sys.generators[std::size_t(gens[1])], u));
        CHECK(ab == ba);
    }
}

TEST_CASE("snake state complex: squares but no filled 2-cubes") {
    auto sys = snake_system(1, 1, 6);
    auto ex = explore(sys);
    CHECK(ex.states.size() == 19);
    auto c = state_complex(sys, ex);
    auto f = f_vector(c);
    REQUIRE(f.size() == 2);  // vertices and edges only
    CHECK(f[0] == 19);
    CHECK(f[1] == 24);
    CHECK(find_unfilled_square(c).has_value());
}

TEST_CASE("home order: the quadrant 4-chain and word order") {
    auto sys = quadrant_system(2);
    auto ex = explore(sys);
    auto ord = home_order(ex, ex.seed);
    // EE <= EN <= NE <= NN
    std::vector<std::string> keys{"00", "01", "10", "11"};
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = 0; j < keys.size(); ++j)
            CHECK(ord.leq[std::size_t(ex.index.at(keys[i]))].test(
                      std::size_t(ex.index.at(keys[j]))) == (i <= j));
}

TEST_CASE("home order equals the word order on subsets") {
    for (ArmKind kind : {ArmKind::Quadrant, ArmKind::Strip}) {
        for (int n = 1; n <= 6; ++n) {
            auto sys = arm_system(kind, n);
            auto ex = explore(sys);
            auto ord = home_order(ex, ex.seed);
            for (std::size_t p = 0; p < ex.states.size(); ++p)
                for (std::size_t q = 0; q < ex.states.size(); ++q) {
                    auto ap = arm_state_from_labels(n, ex.states[p]).verticals;
                    auto aq = arm_state_from_labels(n, ex.states[q]).verticals;
                    CHECK(ord.leq[p].test(q) == oracle::word_leq(ap, aq, n));
                }
        }
    }
}

TEST_CASE("home is below everything") {
    auto ex = explore(strip_system(6));
    auto ord = home_order(ex, ex.seed);
    for (std::size_t q = 0; q < ex.states.size(); ++q)
        CHECK(ord.leq[std::size_t(ex.seed)].test(q));
}

TEST_CASE("the home order is a distributive lattice") {
    auto check_lattice = [](const StateOrder& ord) {
        const int n = int(ord.leq.size());
        std::vector<std::vector<int>> meet(std::size_t(n), std::vector<int>(std::size_t(n), -1));
        std::vector<std::vector<int>> join = meet;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                for (int z = 0; z < n; ++z) {
                    bool lower = ord.leq[std::size_t(z)].test(std::size_t(x)) &&
                                 ord.leq[std::size_t(z)].test(std::size_t(y));
                    bool upper = ord.leq[std::size_t(x)].test(std::size_t(z)) &&
                                 ord.leq[std::size_t(y)].test(std::size_t(z));
                    auto& m = meet[std::size_t(x)][std::size_t(y)];
                    auto& j = join[std::size_t(x)][std::size_t(y)];
                    if (lower && (m < 0 || ord.leq[std::size_t(m)].test(std::size_t(z)))) m = z;
                    if (upper && (j < 0 || ord.leq[std::size_t(z)].test(std::size_t(j)))) j = z;
                }
                REQUIRE(meet[std::size_t(x)][std::size_t(y)] >= 0);
                REQUIRE(join[std::size_t(x)][std::size_t(y)] >= 0);
                // greatest lower bound / least upper bound, not just maximal
                for (int z = 0; z < n; ++z) {
                    if (ord.leq[std::size_t(z)].test(std::size_t(x)) &&
                        ord.leq[std::size_t(z)].test(std::size_t(y)))
                        REQUIRE(ord.leq[std::size_t(z)].test(
                            std::size_t(meet[std::size_t(x)][std::size_t(y)])));
                    if (ord.leq[std::size_t(x)].test(std::size_t(z)) &&
                        ord.leq[std::size_t(y)].test(std::size_t(z)))
                        REQUIRE(ord.leq[std::size_t(join[std::size_t(x)][std::size_t(y)])].test(
                            std::size_t(z)));
                }
            }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    CHECK(join[std::size_t(x)][std::size_t(meet[std::size_t(y)][std::size_t(z)])] ==
                          meet[std::size_t(join[std::size_t(x)][std::size_t(y)])]
                              [std::size_t(join[std::size_t(x)][std::size_t(z)])]);
    };
    for (int n = 1; n <= 5; ++n) {
        auto ex = explore(quadrant_system(n));
        check_lattice(home_order(ex, ex.seed));
    }
    for (int n = 1; n <= 6; ++n) {
        auto ex = explore(strip_system(n));
        check_lattice(home_order(ex, ex.seed));
    }
}

TEST_CASE("exploration distances agree with BFS on the adjacency") {
    auto ex = explore(strip_system(7));
    auto adj = plain_adjacency(ex);
    auto d = oracle::bfs_dist(adj, ex.seed);
    for (std::size_t v = 0; v < d.size(); ++v) CHECK(d[v] == ex.dist[v]);
}
