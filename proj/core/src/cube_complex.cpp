#include "cubeplan/cube_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cubeplan {

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const {
        return std::size_t(p.first) * 1000003u ^ std::size_t(p.second);
    }
};

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= std::size_t(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<std::vector<int>> adjacency(const CubeComplex& c) {
    std::vector<std::vector<int>> adj(c.vertex_count());
    for (auto [a, b] : edge_list(c)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

// Union-find over edge indices.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string ideal_vertex_id(const Pip& p, const Bitset& ideal) {
    std::string out;
    bool first = true;
    ideal.for_each([&](std::size_t e) {
        if (!first) out += '|';
        out += p.id(e);
        first = false;
    });
    return out;
}

}  // namespace

std::vector<std::size_t> f_vector(const CubeComplex& c) {
    std::vector<std::size_t> f{c.vertex_count()};
    for (const auto& cube : c.cubes) {
        std::size_t d = std::size_t(cube_dim(cube));
        if (f.size() <= d) f.resize(d + 1, 0);
        f[d]++;
    }
    return f;
}

std::vector<std::pair<int, int>> edge_list(const CubeComplex& c) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& cube : c.cubes)
        if (cube.size() == 2) edges.push_back({cube[0], cube[1]});
    return edges;
}

PipComplex complex_from_pip(const Pip& p, std::size_t cap) {
    if (validate(p)) throw std::invalid_argument("complex_from_pip: invalid pip");
    PipComplex out;
    out.ideals = consistent_ideals(p, cap);
    std::unordered_map<Bitset, int, BitsetHash> rank;
    for (std::size_t i = 0; i < out.ideals.size(); ++i) {
        rank.emplace(out.ideals[i], int(i));
        out.complex.vertex_ids.push_back(ideal_vertex_id(p, out.ideals[i]));
    }
    std::set<std::vector<int>> cubes;
    std::size_t budget = cap;
    for (const auto& ideal : out.ideals) {
        auto maxima = p.maximal_of(ideal).members();
        if (maxima.size() >= 30)
            throw CapExceeded("cube enumeration: antichain too wide");
        for (std::size_t m = 1; m < (std::size_t(1) << maxima.size()); ++m) {
            std::vector<int> verts;
            verts.reserve(std::size_t(1) << std::popcount(m));
            for (std::size_t s = m;; s = (s - 1) & m) {
                Bitset v = ideal;
                for (std::size_t bit = 0; bit < maxima.size(); ++bit)
                    if (s >> bit & 1) v.reset(maxima[bit]);
                verts.push_back(rank.at(v));
                if (s == 0) break;
            }
            std::sort(verts.begin(), verts.end());
            if (cubes.insert(std::move(verts)).second && cubes.size() > budget)
                throw CapExceeded("cube enumeration exceeds cap");
        }
    }
    out.complex.cubes.assign(cubes.begin(), cubes.end());
    out.complex.root = rank.at(p.empty_set());
    return out;
}

namespace {

// Edge classes as a DSU over edge indices; returns class rank per edge,
// classes numbered by smallest member edge. Empty result signals a square
// whose vertex set does not induce exactly four edges.
std::optional<std::vector<std::size_t>> edge_classes(
    const CubeComplex& c, const std::vector<std::pair<int, int>>& edges,
    std::vector<int>* bad_square = nullptr) {
    std::unordered_map<std::pair<int, int>, int, PairHash> edge_index;
    for (std::size_t i = 0; i < edges.size(); ++i) edge_index.emplace(edges[i], int(i));
    Dsu dsu(int(edges.size()));
    for (const auto& cube : c.cubes) {
        if (cube.size() != 4) continue;
        std::vector<std::pair<int, int>> sq_edges;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                if (edge_index.count({cube[i], cube[j]})) sq_edges.push_back({cube[i], cube[j]});
        if (sq_edges.size() != 4) {
            if (bad_square) *bad_square = cube;
            return std::nullopt;
        }
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                auto [a1, b1] = sq_edges[i];
                auto [a2, b2] = sq_edges[j];
                if (a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2)
                    dsu.unite(edge_index.at({a1, b1}), edge_index.at({a2, b2}));
            }
    }
    std::unordered_map<int, std::size_t> rank_of_root;
    std::vector<std::size_t> cls(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        int r = dsu.find(int(i));
        auto it = rank_of_root.find(r);
        if (it == rank_of_root.end()) it = rank_of_root.emplace(r, rank_of_root.size()).first;
        cls[i] = it->second;
    }
    return cls;
}

}  // namespace

std::vector<Hyperplane> hyperplanes(const CubeComplex& c) {
    auto edges = edge_list(c);
    auto cls = edge_classes(c, edges);
    if (!cls)
        throw std::invalid_argument("hyperplanes: a 2-cube does not induce exactly 4 edges");
    std::size_t count = 0;
    for (auto k : *cls) count = std::max(count, k + 1);
    std::vector<Hyperplane> out(count);
    for (std::size_t i = 0; i < edges.size(); ++i) out[(*cls)[i]].edges.push_back(edges[i]);
    return out;
}

std::optional<std::array<int, 4>> find_unfilled_square(const CubeComplex& c) {
    auto adj = adjacency(c);
    std::unordered_set<std::vector<int>, VecHash> squares;
    for (const auto& cube : c.cubes)
        if (cube.size() == 4) squares.insert(cube);
    const int n = int(c.vertex_count());
    for (int u = 0; u < n; ++u) {
        for (std::size_t i = 0; i < adj[u].size(); ++i) {
            for (std::size_t j = i + 1; j < adj[u].size(); ++j) {
                int x = adj[u][i], y = adj[u][j];
                // common neighbors of x and y other than u
                for (int v : adj[x]) {
                    if (v == u) continue;
                    if (!std::binary_search(adj[y].begin(), adj[y].end(), v)) continue;
                    std::vector<int> quad{u, x, v, y};
                    std::sort(quad.begin(), quad.end());
                    if (quad[0] == quad[1] || quad[1] == quad[2] || quad[2] == quad[3]) continue;
                    if (!squares.count(quad)) return std::array<int, 4>{u, x, v, y};
                }
            }
        }
    }
    return std::nullopt;
}

CatZeroResult reconstruct_pip(const CubeComplex& c, int root) {
    const int n = int(c.vertex_count());
    if (root < 0 || root >= n) throw std::invalid_argument("reconstruct_pip: root out of range");

    auto fail = [&](std::string reason, std::vector<int> verts) {
        CatZeroResult r;
        NotCatZeroReport rep;
        rep.reason = std::move(reason);
        for (int v : verts) rep.witnesses.push_back(c.vertex_ids[v]);
        rep.unfilled_square = find_unfilled_square(c);
        r.failure = std::move(rep);
        return r;
    };

    auto edges = edge_list(c);
    std::unordered_map<std::pair<int, int>, int, PairHash> edge_index;
    for (std::size_t i = 0; i < edges.size(); ++i) edge_index.emplace(edges[i], int(i));
    auto adj = adjacency(c);

    // connectivity
    {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(root);
        seen[root] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    cnt++;
                    q.push(w);
                }
        }
        if (cnt != n) throw std::invalid_argument("reconstruct_pip: complex is disconnected");
    }

    // Hyperplanes: union opposite edges of every square.
    std::vector<int> bad_square;
    auto classes = edge_classes(c, edges, &bad_square);
    if (!classes)
        return fail("a 2-cube's vertex set does not induce exactly 4 edges",
                    {bad_square.begin(), bad_square.end()});
    const std::vector<std::size_t>& edge_class = *classes;
    std::size_t h = 0;
    for (auto k : edge_class) h = std::max(h, k + 1);

    // BFS wall labeling from the root.
    std::vector<Bitset> label(n, Bitset(h));
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            auto cls = edge_class[edge_index.at({std::min(v, w), std::max(v, w)})];
            Bitset lw = label[v];
            if (lw.test(cls))
                lw.reset(cls);
            else
                lw.set(cls);
            if (!seen[w]) {
                seen[w] = 1;
                label[w] = lw;
                q.push(w);
            } else if (!(label[w] == lw)) {
                return fail("wall-crossing labels disagree along two paths", {v, w});
            }
        }
    }
    {
        std::unordered_map<Bitset, int, BitsetHash> dup;
        for (int v = 0; v < n; ++v) {
            auto [it, fresh] = dup.emplace(label[v], v);
            if (!fresh)
                return fail("two vertices are separated from the root by the same walls",
                            {it->second, v});
        }
    }

    // Candidate PIP on the hyperplane classes.
    std::vector<Bitset> verts_with(h, Bitset(std::size_t(n)));
    for (int v = 0; v < n; ++v)
        label[v].for_each([&](std::size_t cls) { verts_with[cls].set(std::size_t(v)); });
    for (std::size_t a = 0; a < h; ++a)
        if (verts_with[a].none())
            return fail("hyperplane crosses no vertex label", {});
    std::vector<Bitset> above(h, Bitset(h)), incompat(h, Bitset(h));
    for (std::size_t p = 0; p < h; ++p)
        for (std::size_t q2 = 0; q2 < h; ++q2) {
            if (p == q2) continue;
            if (verts_with[q2].subset_of(verts_with[p])) {
                if (verts_with[p].subset_of(verts_with[q2]))
                    return fail("two hyperplanes cross exactly the same vertices", {});
                above[p].set(q2);
            }
            if (!verts_with[p].intersects(verts_with[q2])) incompat[p].set(q2);
        }
    // Zero-padded so that id-sorted order equals rank order.
    const std::size_t width = h == 0 ? 1 : std::to_string(h - 1).size();
    std::vector<std::string> names(h);
    for (std::size_t i = 0; i < h; ++i) {
        std::string s = std::to_string(i);
        names[i] = "h" + std::string(width - s.size(), '0') + s;
    }
    Pip pip;
    try {
        pip = Pip::from_relations(names, above, incompat);
    } catch (const std::invalid_argument& e) {
        return fail(std::string("hyperplane relations do not form a PIP: ") + e.what(), {});
    }
    if (validate(pip))
        return fail("hyperplane relations violate the PIP axioms", {});

    // The vertex labels must be exactly the consistent ideals, with matching
    // cube structure.
    for (int v = 0; v < n; ++v)
        if (!is_consistent_ideal(pip, label[v]))
            return fail("a vertex label is not a consistent order ideal", {v});
    PipComplex rebuilt;
    try {
        rebuilt = complex_from_pip(pip, std::max(std::size_t(n), c.cubes.size()) + 1);
    } catch (const CapExceeded&) {
        return fail("the candidate PIP's complex is larger than the input", {});
    }
    if (rebuilt.ideals.size() != std::size_t(n))
        return fail("vertex count differs from the candidate PIP's ideal count", {});
    std::unordered_map<Bitset, int, BitsetHash> vertex_of_label;
    for (int v = 0; v < n; ++v) vertex_of_label.emplace(label[v], v);
    // map rebuilt vertex -> c vertex
    std::vector<int> to_c(n);
    for (int v = 0; v < n; ++v) to_c[v] = vertex_of_label.at(rebuilt.ideals[std::size_t(v)]);
    std::unordered_set<std::vector<int>, VecHash> c_cubes(c.cubes.begin(), c.cubes.end());
    if (rebuilt.complex.cubes.size() != c.cubes.size())
        return fail("cube counts differ from the candidate PIP's complex", {});
    for (const auto& cube : rebuilt.complex.cubes) {
        std::vector<int> img;
        img.reserve(cube.size());
        for (int v : cube) img.push_back(to_c[v]);
        std::sort(img.begin(), img.end());
        if (!c_cubes.count(img))
            return fail("a cube of the candidate PIP's complex is missing from the input",
                        {cube.begin(), cube.end()});
    }

    CatZeroResult out;
    out.pip = std::move(pip);
    out.vertex_ideals = std::move(label);
    return out;
}

namespace {

// Joint color refinement on the disjoint union keeps color ids comparable
// across the two complexes.
struct RefineData {
    std::vector<std::vector<int>> adj;
    std::vector<int> dist;
    std::vector<std::array<int, 4>> cube_member_counts;  // dims 1..4+, clamped
};

RefineData refine_data(const CubeComplex& c) {
    RefineData d;
    d.adj = adjacency(c);
    const int n = int(c.vertex_count());
    d.dist.assign(n, -1);
    std::queue<int> q;
    d.dist[c.root] = 0;
    q.push(c.root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : d.adj[v])
            if (d.dist[w] < 0) {
                d.dist[w] = d.dist[v] + 1;
                q.push(w);
            }
    }
    d.cube_member_counts.assign(std::size_t(n), {0, 0, 0, 0});
    for (const auto& cube : c.cubes) {
        int dim = std::min(cube_dim(cube), 4);
        for (int v : cube) d.cube_member_counts[std::size_t(v)][std::size_t(dim - 1)]++;
    }
    return d;
}

}  // namespace

std::optional<std::vector<int>> rooted_isomorphic(const CubeComplex& c1, const CubeComplex& c2) {
    const int n = int(c1.vertex_count());
    if (c2.vertex_count() != std::size_t(n)) return std::nullopt;
    if (f_vector(c1) != f_vector(c2)) return std::nullopt;

    RefineData d1 = refine_data(c1), d2 = refine_data(c2);

    // initial colors from per-vertex invariants, shared across both sides
    std::map<std::tuple<int, int, std::array<int, 4>>, int> palette;
    std::vector<int> col1(n), col2(n);
    auto init_color = [&](const RefineData& d, int v) {
        auto key = std::make_tuple(d.dist[std::size_t(v)], int(d.adj[std::size_t(v)].size()),
                                   d.cube_member_counts[std::size_t(v)]);
        auto [it, fresh] = palette.emplace(key, int(palette.size()));
        (void)fresh;
        return it->second;
    };
    for (int v = 0; v < n; ++v) col1[v] = init_color(d1, v);
    for (int v = 0; v < n; ++v) col2[v] = init_color(d2, v);

    auto color_counts_match = [&]() {
        std::map<int, int> a, b;
        for (int v = 0; v < n; ++v) {
            a[col1[v]]++;
            b[col2[v]]++;
        }
        return a == b;
    };
    if (!color_counts_match()) return std::nullopt;

    for (int round = 0; round < n; ++round) {
        std::map<std::pair<int, std::vector<int>>, int> next_palette;
        auto refine = [&](const RefineData& d, const std::vector<int>& col, int v) {
            std::vector<int> sig;
            for (int w : d.adj[std::size_t(v)]) sig.push_back(col[w]);
            std::sort(sig.begin(), sig.end());
            auto [it, fresh] =
                next_palette.emplace(std::make_pair(col[v], std::move(sig)), int(next_palette.size()));
            (void)fresh;
            return it->second;
        };
        std::vector<int> n1(n), n2(n);
        for (int v = 0; v < n; ++v) n1[v] = refine(d1, col1, v);
        for (int v = 0; v < n; ++v) n2[v] = refine(d2, col2, v);
        bool stable = true;
        {
            std::map<int, std::set<int>> groups;
            for (int v = 0; v < n; ++v) groups[col1[v]].insert(n1[v]);
            for (auto& [c, g] : groups)
                if (g.size() > 1) stable = false;
        }
        col1.swap(n1);
        col2.swap(n2);
        if (!color_counts_match()) return std::nullopt;
        if (stable) break;
    }

    // BFS-from-root matching order; candidates constrained by color and by
    // adjacency to already-mapped vertices.
    std::vector<int> order;
    {
        std::vector<char> seen(std::size_t(n), 0);
        std::queue<int> q;
        q.push(c1.root);
        seen[std::size_t(c1.root)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int w : d1.adj[std::size_t(v)])
                if (!seen[std::size_t(w)]) {
                    seen[std::size_t(w)] = 1;
                    q.push(w);
                }
        }
        if (int(order.size()) != n) return std::nullopt;  // disconnected from root
    }

    std::vector<Bitset> adj_bits1(std::size_t(n), Bitset{std::size_t(n)});
    std::vector<Bitset> adj_bits2(std::size_t(n), Bitset{std::size_t(n)});
    for (int v = 0; v < n; ++v) {
        for (int w : d1.adj[std::size_t(v)]) adj_bits1[std::size_t(v)].set(std::size_t(w));
        for (int w : d2.adj[std::size_t(v)]) adj_bits2[std::size_t(v)].set(std::size_t(w));
    }

    std::vector<int> map(std::size_t(n), -1), inv(std::size_t(n), -1);
    std::unordered_set<std::vector<int>, VecHash> cubes2(c2.cubes.begin(), c2.cubes.end());

    auto cubes_match = [&]() {
        for (const auto& cube : c1.cubes) {
            std::vector<int> img;
            img.reserve(cube.size());
            for (int v : cube) img.push_back(map[std::size_t(v)]);
            std::sort(img.begin(), img.end());
            if (!cubes2.count(img)) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == order.size()) return cubes_match();
        int v = order[k];
        for (int img = 0; img < n; ++img) {
            if (inv[std::size_t(img)] != -1) continue;
            if (col2[img] != col1[v]) continue;
            if (k == 0 && img != c2.root) continue;
            bool ok = true;
            for (int w : d1.adj[std::size_t(v)]) {
                int mw = map[std::size_t(w)];
                if (mw != -1 && !adj_bits2[std::size_t(img)].test(std::size_t(mw))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                // reflect: mapped neighbors of img must be neighbors of v
                adj_bits2[std::size_t(img)].for_each([&](std::size_t w2) {
                    int pre = inv[w2];
                    if (pre != -1 && !adj_bits1[std::size_t(v)].test(std::size_t(pre))) ok = false;
                });
            }
            if (!ok) continue;
            map[std::size_t(v)] = img;
            inv[std::size_t(img)] = v;
            if (self(self, k + 1)) return true;
            map[std::size_t(v)] = -1;
            inv[std::size_t(img)] = -1;
        }
        return false;
    };
    if (map.empty()) return std::vector<int>{};
    if (!rec(rec, 0)) return std::nullopt;
    return map;
}

}  // namespace cubeplan
