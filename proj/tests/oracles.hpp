// Independent test oracles. Everything here recomputes relations from the
// raw cover/pair data with its own algorithms, so agreement with the library
// is meaningful.
#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cubeplan/arms.hpp"
#include "cubeplan/pip.hpp"

namespace oracle {

using cubeplan::BigInt;
using cubeplan::Bitset;
using cubeplan::Pip;

struct RawRelations {
    std::size_t n = 0;
    std::vector<std::vector<bool>> leq;     // reflexive
    std::vector<std::vector<bool>> incons;  // closed, symmetric
};

inline RawRelations raw_relations(const Pip& p) {
    RawRelations r;
    r.n = p.size();
    r.leq.assign(r.n, std::vector<bool>(r.n, false));
    for (std::size_t i = 0; i < r.n; ++i) r.leq[i][i] = true;
    for (auto [a, b] : p.cover_pairs()) r.leq[a][b] = true;
    for (std::size_t k = 0; k < r.n; ++k)
        for (std::size_t i = 0; i < r.n; ++i)
            for (std::size_t j = 0; j < r.n; ++j)
                if (r.leq[i][k] && r.leq[k][j]) r.leq[i][j] = true;
    r.incons.assign(r.n, std::vector<bool>(r.n, false));
    for (auto [a, b] : p.stored_inconsistent_pairs())
        for (std::size_t a2 = 0; a2 < r.n; ++a2)
            for (std::size_t b2 = 0; b2 < r.n; ++b2)
                if (r.leq[a][a2] && r.leq[b][b2]) {
                    r.incons[a2][b2] = true;
                    r.incons[b2][a2] = true;
                }
    return r;
}

/// Exhaustive subset scan; usable for |P| <= ~20.
inline std::vector<Bitset> brute_force_ideals(const Pip& p) {
    auto rel = raw_relations(p);
    std::vector<Bitset> out;
    const std::size_t n = rel.n;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        bool ok = true;
        for (std::size_t b = 0; b < n && ok; ++b) {
            if (!(mask >> b & 1)) continue;
            for (std::size_t a = 0; a < n && ok; ++a) {
                if (rel.leq[a][b] && !(mask >> a & 1)) ok = false;
                if ((mask >> a & 1) && rel.incons[a][b]) ok = false;
            }
        }
        if (!ok) continue;
        Bitset s(n);
        for (std::size_t b = 0; b < n; ++b)
            if (mask >> b & 1) s.set(b);
        out.push_back(s);
    }
    return out;
}

/// Permutation filter; usable for |b| <= 8.
inline BigInt permutation_linear_extensions(const Pip& p, const Bitset& b) {
    auto rel = raw_relations(p);
    auto members = b.members();
    std::sort(members.begin(), members.end());
    BigInt count = 0;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < members.size() && ok; ++i)
            for (std::size_t j = i + 1; j < members.size() && ok; ++j)
                if (members[j] != members[i] && rel.leq[members[j]][members[i]]) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(members.begin(), members.end()));
    return count;
}

inline std::size_t longest_chain(const Pip& p, const Bitset& b) {
    auto rel = raw_relations(p);
    auto members = b.members();
    std::size_t best = 0;
    std::vector<std::size_t> memo(p.size(), 0);
    // longest chain ending at e, by repeated relaxation (no topo assumption)
    bool changed = true;
    for (auto e : members) memo[e] = 1;
    while (changed) {
        changed = false;
        for (auto e : members)
            for (auto d : members)
                if (d != e && rel.leq[d][e] && memo[d] + 1 > memo[e]) {
                    memo[e] = memo[d] + 1;
                    changed = true;
                }
    }
    for (auto e : members) best = std::max(best, memo[e]);
    return best;
}

inline std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj, int s) {
    std::vector<int> d(adj.size(), -1);
    std::queue<int> q;
    d[std::size_t(s)] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[std::size_t(v)])
            if (d[std::size_t(w)] < 0) {
                d[std::size_t(w)] = d[std::size_t(v)] + 1;
                q.push(w);
            }
    }
    return d;
}

inline BigInt count_shortest_paths(const std::vector<std::vector<int>>& adj, int s, int t) {
    auto d = bfs_dist(adj, s);
    std::vector<BigInt> ways(adj.size(), 0);
    ways[std::size_t(s)] = 1;
    std::vector<int> order(adj.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return d[std::size_t(a)] < d[std::size_t(b)]; });
    for (int v : order) {
        if (v == s || d[std::size_t(v)] < 0) continue;
        for (int w : adj[std::size_t(v)])
            if (d[std::size_t(w)] == d[std::size_t(v)] - 1) ways[std::size_t(v)] += ways[std::size_t(w)];
    }
    return ways[std::size_t(t)];
}

/// Seeded random PIP: a random DAG plus up to `max_incons` random pairs that
/// are incomparable and share no upper bound.
inline Pip random_pip(std::mt19937_64& rng, int max_n, int max_incons) {
    std::uniform_int_distribution<int> size_dist(1, max_n);
    const int n = size_dist(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double p_edge = 0.08 + 0.35 * unit(rng);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
        std::string s = std::to_string(i);
        ids.push_back("e" + std::string(2 - s.size(), '0') + s);
    }
    std::vector<std::pair<std::string, std::string>> covers;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unit(rng) < p_edge) covers.push_back({ids[std::size_t(i)], ids[std::size_t(j)]});
    Pip base = Pip::from_covers(ids, covers, {});
    std::vector<std::pair<std::string, std::string>> candidates;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto a = std::size_t(i), b = std::size_t(j);
            if (base.leq(a, b) || base.leq(b, a)) continue;
            if (base.up_set(a).intersects(base.up_set(b))) continue;
            candidates.push_back({ids[a], ids[b]});
        }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::uniform_int_distribution<int> cnt_dist(0, max_incons);
    const int take = std::min<int>(cnt_dist(rng), int(candidates.size()));
    candidates.resize(std::size_t(take));
    return Pip::from_covers(ids, covers, candidates);
}

/// Word order of subsets of [n] (padded with n+1): A <= B iff w(A) >= w(B).
inline bool word_leq(const std::vector<int>& a, const std::vector<int>& b, int n) {
    for (int m = 0; m < n; ++m) {
        int wa = m < int(a.size()) ? a[std::size_t(m)] : n + 1;
        int wb = m < int(b.size()) ? b[std::size_t(m)] : n + 1;
        if (!(wa >= wb)) return false;
    }
    return true;
}

/// BFS distance in the cube-move graph: ideals are vertices, one step
/// crosses a cube (symmetric difference an antichain, union consistent).
inline int cube_move_distance(const Pip& p, const Bitset& from, const Bitset& to) {
    auto ideals = cubeplan::consistent_ideals(p);
    std::unordered_map<Bitset, int, cubeplan::BitsetHash> index;
    for (std::size_t i = 0; i < ideals.size(); ++i) index.emplace(ideals[i], int(i));
    auto is_antichain = [&](const Bitset& s) {
        bool ok = true;
        s.for_each([&](std::size_t a) {
            s.for_each([&](std::size_t b) {
                if (a != b && p.less(a, b)) ok = false;
            });
        });
        return ok;
    };
    std::vector<int> dist(ideals.size(), -1);
    std::queue<int> q;
    dist[std::size_t(index.at(from))] = 0;
    q.push(index.at(from));
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (std::size_t w = 0; w < ideals.size(); ++w) {
            if (dist[w] >= 0 || int(w) == v) continue;
            Bitset diff = ideals[std::size_t(v)] ^ ideals[w];
            if (diff.none() || !is_antichain(diff)) continue;
            if (!index.count(ideals[std::size_t(v)] | ideals[w])) continue;
            dist[w] = dist[std::size_t(v)] + 1;
            q.push(int(w));
        }
    }
    return dist[std::size_t(index.at(to))];
}

}  // namespace oracle
