#include "cubeplan/reconfig.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace cubeplan {

void validate_system(const ReconfigSystem& sys) {
    const int nv = int(sys.graph.vertices.size());
    const int na = int(sys.alphabet.size());
    for (auto [a, b] : sys.graph.edges)
        if (a < 0 || b < 0 || a >= nv || b >= nv)
            throw std::invalid_argument("edge endpoint out of range");
    if (int(sys.seed.size()) != nv) throw std::invalid_argument("seed is not a total labeling");
    for (int s : sys.seed)
        if (s < 0 || s >= na) throw std::invalid_argument("seed symbol out of range");
    for (const auto& g : sys.generators) {
        if (g.support.empty()) throw std::invalid_argument(g.name + ": empty support");
        if (!std::is_sorted(g.support.begin(), g.support.end()) ||
            std::adjacent_find(g.support.begin(), g.support.end()) != g.support.end())
            throw std::invalid_argument(g.name + ": support not sorted/unique");
        if (!std::includes(g.support.begin(), g.support.end(), g.trace.begin(), g.trace.end()))
            throw std::invalid_argument(g.name + ": trace not within support");
        if (g.trace.empty()) throw std::invalid_argument(g.name + ": empty trace");
        if (g.local0.size() != g.support.size() || g.local1.size() != g.support.size())
            throw std::invalid_argument(g.name + ": local states must label the support");
        bool differs_on_trace = false;
        for (std::size_t k = 0; k < g.support.size(); ++k) {
            if (g.local0[k] < 0 || g.local0[k] >= na || g.local1[k] < 0 || g.local1[k] >= na)
                throw std::invalid_argument(g.name + ": local symbol out of range");
            bool in_trace = std::binary_search(g.trace.begin(), g.trace.end(), g.support[k]);
            if (!in_trace && g.local0[k] != g.local1[k])
                throw std::invalid_argument(g.name + ": locals differ outside the trace");
            if (in_trace && g.local0[k] != g.local1[k]) differs_on_trace = true;
        }
        if (!differs_on_trace) throw std::invalid_argument(g.name + ": move is trivial");
        if (g.support.front() < 0 || g.support.back() >= nv)
            throw std::invalid_argument(g.name + ": support vertex out of range");
    }
}

bool admissible(const Generator& g, const RState& u) {
    bool m0 = true, m1 = true;
    for (std::size_t k = 0; k < g.support.size(); ++k) {
        int s = u[std::size_t(g.support[k])];
        m0 &= s == g.local0[k];
        m1 &= s == g.local1[k];
        if (!m0 && !m1) return false;
    }
    return m0 || m1;
}

RState apply_generator(const Generator& g, const RState& u) {
    bool m0 = true;
    for (std::size_t k = 0; k < g.support.size(); ++k)
        if (u[std::size_t(g.support[k])] != g.local0[k]) {
            m0 = false;
            break;
        }
    RState v = u;
    const auto& target = m0 ? g.local1 : g.local0;
    for (std::size_t k = 0; k < g.support.size(); ++k)
        v[std::size_t(g.support[k])] = target[k];
    return v;
}

namespace {

bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else
            return false;
    }
    return true;
}

}  // namespace

bool commute(const Generator& a, const Generator& b) {
    return disjoint_sorted(a.trace, b.support) && disjoint_sorted(b.trace, a.support);
}

bool commute(const ReconfigSystem& sys, const std::vector<int>& ranks) {
    for (std::size_t i = 0; i < ranks.size(); ++i)
        for (std::size_t j = i + 1; j < ranks.size(); ++j)
            if (!commute(sys.generators[std::size_t(ranks[i])],
                         sys.generators[std::size_t(ranks[j])]))
                return false;
    return true;
}

std::string encode_state(const ReconfigSystem& sys, const RState& u) {
    bool compact = true;
    for (const auto& s : sys.alphabet) compact &= s.size() == 1;
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!compact && i) out += ',';
        out += sys.alphabet[std::size_t(u[i])];
    }
    return out;
}

Exploration explore(const ReconfigSystem& sys, std::size_t cap) {
    validate_system(sys);
    Exploration ex;
    ex.states.push_back(sys.seed);
    ex.keys.push_back(encode_state(sys, sys.seed));
    ex.index.emplace(ex.keys[0], 0);
    ex.dist.push_back(0);
    std::vector<int> layer{0};
    std::vector<std::tuple<int, std::string, int>> pending;  // (from, to-key, generator)
    int depth = 0;
    while (!layer.empty()) {
        ++depth;
        std::vector<std::pair<std::string, RState>> fresh;
        for (int u : layer) {
            for (std::size_t g = 0; g < sys.generators.size(); ++g) {
                if (!admissible(sys.generators[g], ex.states[std::size_t(u)])) continue;
                RState v = apply_generator(sys.generators[g], ex.states[std::size_t(u)]);
                std::string key = encode_state(sys, v);
                pending.emplace_back(u, key, int(g));
                if (!ex.index.count(key)) {
                    ex.index.emplace(key, -1);  // reserve
                    fresh.emplace_back(key, std::move(v));
                }
            }
        }
        std::sort(fresh.begin(), fresh.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        layer.clear();
        for (auto& [key, st] : fresh) {
            if (ex.states.size() >= cap)
                throw CapExceeded("state exploration exceeds cap of " + std::to_string(cap));
            int idx = int(ex.states.size());
            ex.index[key] = idx;
            ex.states.push_back(std::move(st));
            ex.keys.push_back(key);
            ex.dist.push_back(depth);
            layer.push_back(idx);
        }
    }
    ex.adj.assign(ex.states.size(), {});
    std::set<std::tuple<int, int, int>> seen;
    for (auto& [u, key, g] : pending) {
        int v = ex.index.at(key);
        if (seen.insert({u, v, g}).second) ex.adj[std::size_t(u)].push_back({v, g});
        if (seen.insert({v, u, g}).second) ex.adj[std::size_t(v)].push_back({u, g});
    }
    for (auto& a : ex.adj) std::sort(a.begin(), a.end());
    return ex;
}

CubeComplex state_complex(const ReconfigSystem& sys, const Exploration& ex,
                          std::size_t cube_cap) {
    CubeComplex c;
    c.vertex_ids = ex.keys;
    c.root = ex.seed;
    std::set<std::vector<int>> cubes;
    const std::size_t ng = sys.generators.size();
    for (std::size_t u = 0; u < ex.states.size(); ++u) {
        std::vector<int> adm;
        for (std::size_t g = 0; g < ng; ++g)
            if (admissible(sys.generators[g], ex.states[u])) adm.push_back(int(g));
        // grow pairwise-commuting subsets; every subset of a commuting set
        // is itself enumerated, so faces come for free
        std::vector<int> clique;
        auto emit = [&]() {
            std::vector<int> verts;
            verts.reserve(std::size_t(1) << clique.size());
            for (std::size_t mask = 0; mask < (std::size_t(1) << clique.size()); ++mask) {
                RState v = ex.states[u];
                for (std::size_t b = 0; b < clique.size(); ++b)
                    if (mask >> b & 1)
                        v = apply_generator(sys.generators[std::size_t(clique[b])], v);
                verts.push_back(ex.index.at(encode_state(sys, v)));
            }
            std::sort(verts.begin(), verts.end());
            verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
            if (verts.size() == (std::size_t(1) << clique.size())) {
                if (cubes.insert(std::move(verts)).second && cubes.size() > cube_cap)
                    throw CapExceeded("cube enumeration exceeds cap");
            }
        };
        auto rec = [&](auto&& self, std::size_t next) -> void {
            if (!clique.empty()) emit();
            for (std::size_t k = next; k < adm.size(); ++k) {
                bool ok = true;
                for (int q : clique)
                    if (!commute(sys.generators[std::size_t(adm[k])],
                                 sys.generators[std::size_t(q)])) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                clique.push_back(adm[k]);
                self(self, k + 1);
                clique.pop_back();
            }
        };
        rec(rec, 0);
    }
    c.cubes.assign(cubes.begin(), cubes.end());
    return c;
}

CubeComplex state_complex(const ReconfigSystem& sys, std::size_t cap) {
    return state_complex(sys, explore(sys, cap), cap);
}

StateOrder home_order(const Exploration& ex, int home) {
    const int n = int(ex.states.size());
    if (home < 0 || home >= n) throw std::invalid_argument("home_order: home out of range");
    auto bfs = [&](int src) {
        std::vector<int> d(std::size_t(n), -1);
        std::queue<int> q;
        d[std::size_t(src)] = 0;
        q.push(src);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [w, g] : ex.adj[std::size_t(v)])
                if (d[std::size_t(w)] < 0) {
                    d[std::size_t(w)] = d[std::size_t(v)] + 1;
                    q.push(w);
                }
        }
        return d;
    };
    StateOrder ord;
    ord.home = home;
    ord.dist = bfs(home);
    ord.leq.assign(std::size_t(n), Bitset(std::size_t(n)));
    for (int p = 0; p < n; ++p) {
        auto dp = bfs(p);
        for (int q2 = 0; q2 < n; ++q2)
            if (ord.dist[std::size_t(p)] >= 0 && dp[std::size_t(q2)] >= 0 &&
                ord.dist[std::size_t(p)] + dp[std::size_t(q2)] == ord.dist[std::size_t(q2)])
                ord.leq[std::size_t(p)].set(std::size_t(q2));
    }
    return ord;
}

StateOrder home_order(const ReconfigSystem& sys, const RState& home, std::size_t cap) {
    auto ex = explore(sys, cap);
    auto it = ex.index.find(encode_state(sys, home));
    if (it == ex.index.end()) throw std::invalid_argument("home_order: home is not reachable");
    return home_order(ex, it->second);
}

std::vector<std::pair<int, int>> order_covers(const StateOrder& ord) {
    const int n = int(ord.leq.size());
    std::vector<std::pair<int, int>> covers;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!ord.less(p, q)) continue;
            bool direct = true;
            for (int r = 0; r < n && direct; ++r)
                if (ord.less(p, r) && ord.less(r, q)) direct = false;
            if (direct) covers.push_back({p, q});
        }
    return covers;
}

}  // namespace cubeplan
