#include "cubeplan/arms.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubeplan/genfun.hpp"

namespace cubeplan {

bool valid_arm_state(ArmKind kind, const ArmState& s) {
    if (s.n < 1) return false;
    int prev = 0;
    for (int a : s.verticals) {
        if (a < 1 || a > s.n) return false;
        if (a <= prev) return false;
        if (kind == ArmKind::Strip && prev != 0 && a == prev + 1) return false;
        prev = a;
    }
    return true;
}

std::string format_arm_state(const ArmState& s) {
    std::string out;
    for (std::size_t i = 0; i < s.verticals.size(); ++i) {
        if (s.n > 9 && i) out += ',';
        out += std::to_string(s.verticals[i]);
    }
    return out;
}

ArmState parse_arm_state(ArmKind kind, int n, const std::string& text) {
    ArmState s;
    s.n = n;
    if (!text.empty()) {
        if (text.find(',') != std::string::npos || n > 9) {
            std::size_t pos = 0;
            while (pos < text.size()) {
                std::size_t next = text.find(',', pos);
                if (next == std::string::npos) next = text.size();
                s.verticals.push_back(std::stoi(text.substr(pos, next - pos)));
                pos = next + 1;
            }
        } else {
            for (char ch : text) {
                if (ch < '1' || ch > '9')
                    throw std::invalid_argument("bad state digit: " + std::string(1, ch));
                s.verticals.push_back(ch - '0');
            }
        }
    }
    if (!valid_arm_state(kind, s))
        throw std::invalid_argument("invalid " +
                                    std::string(kind == ArmKind::Strip ? "strip" : "quadrant") +
                                    " state: \"" + text + "\"");
    return s;
}

namespace {

std::string coord_id(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

std::pair<int, int> parse_coord(const std::string& id) {
    auto comma = id.find(',');
    return {std::stoi(id.substr(0, comma)), std::stoi(id.substr(comma + 1))};
}

int strip_levels(int n) {
    int k = 0;
    while (n - 2 * (k + 1) + 2 >= 1) ++k;
    return k;
}

}  // namespace

Pip qp_pip(int n) {
    if (n < 1) throw std::invalid_argument("qp_pip: n must be >= 1");
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> covers;
    for (int x = 0; x <= n - 1; ++x)
        for (int y = 0; y <= x; ++y) {
            elements.push_back(coord_id(x, y));
            if (x + 1 <= n - 1) covers.push_back({coord_id(x, y), coord_id(x + 1, y)});
            if (y + 1 <= x) covers.push_back({coord_id(x, y), coord_id(x, y + 1)});
        }
    return Pip::from_covers(std::move(elements), covers, {});
}

Pip sp_pip(int n) {
    if (n < 1) throw std::invalid_argument("sp_pip: n must be >= 1");
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> covers;
    const int levels = strip_levels(n);
    for (int k = 1; k <= levels; ++k) {
        const int width = n - 2 * k + 2;
        for (int i = 1; i <= width; ++i) {
            elements.push_back(coord_id(k, i));
            if (i - 1 >= 1) covers.push_back({coord_id(k, i), coord_id(k, i - 1)});
            if (k + 1 <= levels && i <= n - 2 * (k + 1) + 2)
                covers.push_back({coord_id(k, i), coord_id(k + 1, i)});
        }
    }
    return Pip::from_covers(std::move(elements), covers, {});
}

namespace {

std::size_t arm_pip_size(ArmKind kind, int n) {
    if (kind == ArmKind::Quadrant) return std::size_t(n) * std::size_t(n + 1) / 2;
    std::size_t total = 0;
    for (int k = 1; n - 2 * k + 2 >= 1; ++k) total += std::size_t(n - 2 * k + 2);
    return total;
}

}  // namespace

Bitset arm_state_to_ideal(ArmKind kind, const Pip& p, const ArmState& s) {
    if (!valid_arm_state(kind, s)) throw std::invalid_argument("invalid arm state");
    if (p.size() != arm_pip_size(kind, s.n))
        throw std::invalid_argument("arm state length does not match the poset");
    const auto& a = s.verticals;
    const int k = int(a.size());
    Bitset ideal(p.size());
    for (std::size_t e = 0; e < p.size(); ++e) {
        auto [c1, c2] = parse_coord(p.id(e));
        bool in;
        if (kind == ArmKind::Quadrant) {
            const int x = c1, y = c2;
            in = y + 1 <= k;
            for (int m = 1; in && m <= y + 1; ++m) in = a[std::size_t(m - 1)] <= (s.n - x) + m - 1;
        } else {
            const int lvl = c1, i = c2;
            in = lvl <= k;
            for (int m = 1; in && m <= lvl; ++m) in = a[std::size_t(m - 1)] <= i + 2 * (m - 1);
        }
        if (in) ideal.set(e);
    }
    return ideal;
}

ArmState arm_ideal_to_state(ArmKind kind, const Pip& p, int n, const Bitset& ideal) {
    if (p.size() != arm_pip_size(kind, n) || ideal.universe() != p.size())
        throw std::invalid_argument("ideal does not live in the arm's poset");
    ArmState s;
    s.n = n;
    // a_m = min over suitable ideal cells of the slot bound they impose
    int max_level = 0;
    ideal.for_each([&](std::size_t e) {
        auto [c1, c2] = parse_coord(p.id(e));
        max_level = std::max(max_level, kind == ArmKind::Quadrant ? c2 + 1 : c1);
    });
    for (int m = 1; m <= max_level; ++m) {
        int best = n + 1;
        ideal.for_each([&](std::size_t e) {
            auto [c1, c2] = parse_coord(p.id(e));
            if (kind == ArmKind::Quadrant) {
                if (c2 >= m - 1) best = std::min(best, (n - c1) + m - 1);
            } else {
                if (c1 >= m) best = std::min(best, c2 + 2 * (m - 1));
            }
        });
        s.verticals.push_back(best);
    }
    if (!valid_arm_state(kind, s))
        throw std::invalid_argument("ideal does not correspond to a valid state");
    return s;
}

std::string unfold(const ArmState& strip_state) {
    if (!valid_arm_state(ArmKind::Strip, strip_state))
        throw std::invalid_argument("unfold: invalid strip state");
    std::string word(std::size_t(strip_state.n), 'E');
    for (int a : strip_state.verticals) word[std::size_t(a - 1)] = 'N';
    return word;
}

ArmState refold(const std::string& word) {
    ArmState s;
    s.n = int(word.size());
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word[i] == 'N') s.verticals.push_back(int(i) + 1);
    if (!fpath_valid(word) || !valid_arm_state(ArmKind::Strip, s))
        throw std::invalid_argument("refold: not an F-path word");
    return s;
}

bool fpath_valid(const std::string& word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] != 'N' && word[i] != 'E') return false;
        if (i && word[i] == 'N' && word[i - 1] == 'N') return false;
    }
    return true;
}

int PartialPath::length() const {
    int len = 0;
    for (auto s : symbols) len += s == PathSymbol::Square ? 2 : 1;
    return len;
}

int PartialPath::dimension() const {
    int d = 0;
    for (auto s : symbols)
        if (s == PathSymbol::Square || s == PathSymbol::HalfSquare) ++d;
    return d;
}

std::vector<PartialPath> enumerate_partial_paths(int n, ArmKind kind, std::size_t cap) {
    std::vector<PartialPath> out;
    PartialPath cur;
    cur.flavor = kind;
    auto emit = [&]() {
        if (out.size() >= cap)
            throw CapExceeded("partial path enumeration exceeds cap of " + std::to_string(cap));
        out.push_back(cur);
    };
    auto rec = [&](auto&& self, int remaining, bool must_east) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        auto push = [&](PathSymbol s, int cost) {
            cur.symbols.push_back(s);
            self(self, remaining - cost,
                 kind == ArmKind::Strip && (s == PathSymbol::N || s == PathSymbol::Square));
            cur.symbols.pop_back();
        };
        push(PathSymbol::E, 1);
        if (!must_east) {
            push(PathSymbol::N, 1);
            if (remaining >= 2) push(PathSymbol::Square, 2);
            if (remaining == 1) {
                cur.symbols.push_back(PathSymbol::HalfSquare);
                emit();
                cur.symbols.pop_back();
            }
        }
    };
    rec(rec, n, false);
    return out;
}

namespace {

// Vertical positions of a resolution of the path; `flip` picks the lower
// resolution of the symbol at that index (square -> EN, half-square -> E).
ArmState resolve_path(int n, const PartialPath& path, int flip) {
    ArmState s;
    s.n = n;
    int pos = 1;
    for (std::size_t i = 0; i < path.symbols.size(); ++i) {
        switch (path.symbols[i]) {
            case PathSymbol::N:
                s.verticals.push_back(pos);
                pos += 1;
                break;
            case PathSymbol::E:
                pos += 1;
                break;
            case PathSymbol::Square:
                s.verticals.push_back(int(i) == flip ? pos + 1 : pos);
                pos += 2;
                break;
            case PathSymbol::HalfSquare:
                if (int(i) != flip) s.verticals.push_back(pos);
                pos += 1;
                break;
        }
    }
    return s;
}

}  // namespace

std::pair<Bitset, Bitset> partial_path_cube(const Pip& p, int n, const PartialPath& path) {
    if (path.length() != n) throw std::invalid_argument("partial path length mismatch");
    const ArmKind kind = path.flavor;
    Bitset ideal = arm_state_to_ideal(kind, p, resolve_path(n, path, -1));
    Bitset m(p.size());
    for (std::size_t i = 0; i < path.symbols.size(); ++i) {
        if (path.symbols[i] != PathSymbol::Square && path.symbols[i] != PathSymbol::HalfSquare)
            continue;
        Bitset lower = arm_state_to_ideal(kind, p, resolve_path(n, path, int(i)));
        Bitset diff = ideal.minus(lower);
        if (diff.count() != 1 || !lower.subset_of(ideal))
            throw std::logic_error("square resolution did not remove exactly one cell");
        m |= diff;
    }
    if (!m.subset_of(p.maximal_of(ideal)))
        throw std::logic_error("square cells are not maximal in the boundary ideal");
    return {ideal, m};
}

std::vector<BigInt> cube_counts_by_paths(int n, ArmKind kind, std::size_t cap) {
    std::vector<BigInt> counts;
    for (const auto& path : enumerate_partial_paths(n, kind, cap)) {
        std::size_t d = std::size_t(path.dimension());
        if (counts.size() <= d) counts.resize(d + 1, 0);
        counts[d] += 1;
    }
    return counts;
}

std::vector<BigInt> cube_counts_by_series(int n, ArmKind kind) {
    std::vector<YPoly> num, den;
    if (kind == ArmKind::Quadrant) {
        // (1 + xy) / (1 - 2x - x^2 y)
        num = {{1}, {0, 1}};
        den = {{1}, {-2}, {0, -1}};
    } else {
        // (1 + x + xy + x^2 y) / (1 - x - x^2 - x^3 y)
        num = {{1}, {1, 1}, {0, 1}};
        den = {{1}, {-1}, {-1}, {0, -1}};
    }
    auto series = rational_series(num, den, std::size_t(n));
    return series[std::size_t(n)];
}

std::vector<BigInt> cube_counts(int n, ArmKind kind, std::size_t cap) {
    // the series route is cheap; use it to size-check before enumerating
    auto b = cube_counts_by_series(n, kind);
    BigInt total = 0;
    for (const auto& c : b) total += c;
    if (total > BigInt(cap))
        throw CapExceeded("partial path enumeration would exceed cap of " + std::to_string(cap));
    auto a = cube_counts_by_paths(n, kind, cap);
    auto pad = [](std::vector<BigInt>& v, std::size_t len) { v.resize(len, 0); };
    std::size_t len = std::max(a.size(), b.size());
    pad(a, len);
    pad(b, len);
    if (a != b)
        throw std::runtime_error("cube count routes disagree at n=" + std::to_string(n));
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

std::uint64_t fibonacci(int k) {
    std::uint64_t a = 0, b = 1;  // F_0, F_1
    for (int i = 0; i < k; ++i) {
        std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

namespace {

Generator slot_generator(std::string name, std::vector<int> support, std::vector<int> trace,
                         std::vector<int> local0, std::vector<int> local1) {
    Generator g;
    g.name = std::move(name);
    g.support = std::move(support);
    g.trace = std::move(trace);
    g.local0 = std::move(local0);
    g.local1 = std::move(local1);
    return g;
}

}  // namespace

ReconfigSystem quadrant_system(int n) {
    if (n < 1) throw std::invalid_argument("quadrant_system: n must be >= 1");
    ReconfigSystem sys;
    for (int i = 1; i <= n; ++i) sys.graph.vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) sys.graph.edges.push_back({i, i + 1});
    sys.alphabet = {"0", "1"};
    for (int i = 1; i < n; ++i)
        sys.generators.push_back(slot_generator("hop@" + std::to_string(i), {i - 1, i},
                                                {i - 1, i}, {1, 0}, {0, 1}));
    sys.generators.push_back(slot_generator("end@" + std::to_string(n), {n - 1}, {n - 1}, {0}, {1}));
    sys.seed.assign(std::size_t(n), 0);
    return sys;
}

ReconfigSystem strip_system(int n) {
    if (n < 1) throw std::invalid_argument("strip_system: n must be >= 1");
    ReconfigSystem sys;
    for (int i = 1; i <= n; ++i) sys.graph.vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) sys.graph.edges.push_back({i, i + 1});
    sys.alphabet = {"0", "1"};
    // A hop between slots i,i+1 keeps both flanking slots empty, so the
    // particles stay at distance >= 2.
    for (int i = 1; i < n; ++i) {
        std::vector<int> support, local0, local1;
        auto add = [&](int slot, int s0, int s1) {
            if (slot < 1 || slot > n) return;
            support.push_back(slot - 1);
            local0.push_back(s0);
            local1.push_back(s1);
        };
        add(i - 1, 0, 0);
        add(i, 1, 0);
        add(i + 1, 0, 1);
        add(i + 2, 0, 0);
        sys.generators.push_back(slot_generator("hop@" + std::to_string(i), support,
                                                {i - 1, i}, local0, local1));
    }
    {
        std::vector<int> support, trace{n - 1}, local0, local1;
        if (n >= 2) {
            support = {n - 2, n - 1};
            local0 = {0, 0};
            local1 = {0, 1};
        } else {
            support = {0};
            local0 = {0};
            local1 = {1};
        }
        sys.generators.push_back(
            slot_generator("end@" + std::to_string(n), support, trace, local0, local1));
    }
    sys.seed.assign(std::size_t(n), 0);
    return sys;
}

ReconfigSystem arm_system(ArmKind kind, int n) {
    return kind == ArmKind::Quadrant ? quadrant_system(n) : strip_system(n);
}

ReconfigSystem snake_system(int len, int rows, int cols) {
    if (len < 1 || rows < 1 || cols < 1)
        throw std::invalid_argument("snake_system: parameters must be >= 1");
    if (cols < len) throw std::invalid_argument("snake_system: seed needs cols >= len");
    ReconfigSystem sys;
    const int w = cols + 1, hgt = rows + 1;
    auto vid = [&](int x, int y) { return y * w + x; };
    for (int y = 0; y < hgt; ++y)
        for (int x = 0; x < w; ++x)
            sys.graph.vertices.push_back(std::to_string(x) + "," + std::to_string(y));
    for (int y = 0; y < hgt; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) sys.graph.edges.push_back({vid(x, y), vid(x + 1, y)});
            if (y + 1 < hgt) sys.graph.edges.push_back({vid(x, y), vid(x, y + 1)});
        }
    // symbol 0 = free, symbol j+1 = snake joint j
    sys.alphabet.push_back("-");
    for (int j = 0; j <= len; ++j) sys.alphabet.push_back(std::to_string(j));
    auto sym = [](int joint) { return joint + 1; };

    auto add_gen = [&](std::string name, std::vector<std::pair<int, int>> fixed, int moving_sym,
                       int v, int wv) {
        // moving joint sits at v in local0 and at wv in local1
        std::vector<std::pair<int, std::pair<int, int>>> cells;  // vertex -> (l0, l1)
        for (auto [vert, s] : fixed) cells.push_back({vert, {s, s}});
        cells.push_back({v, {moving_sym, 0}});
        cells.push_back({wv, {0, moving_sym}});
        std::sort(cells.begin(), cells.end());
        Generator g;
        g.name = std::move(name);
        for (auto& [vert, ls] : cells) {
            g.support.push_back(vert);
            g.local0.push_back(ls.first);
            g.local1.push_back(ls.second);
        }
        g.trace = {std::min(v, wv), std::max(v, wv)};
        sys.generators.push_back(std::move(g));
    };

    // End flips: the end joint pivots 90 degrees around its neighbor joint.
    for (int y = 0; y < hgt; ++y)
        for (int x = 0; x < w; ++x) {
            const int u = vid(x, y);
            std::vector<int> horiz, vert;
            if (x > 0) horiz.push_back(vid(x - 1, y));
            if (x + 1 < w) horiz.push_back(vid(x + 1, y));
            if (y > 0) vert.push_back(vid(x, y - 1));
            if (y + 1 < hgt) vert.push_back(vid(x, y + 1));
            for (int hv : horiz)
                for (int vv : vert)
                    for (int end : {0, len}) {
                        const int pivot_joint = end == 0 ? 1 : len - 1;
                        add_gen("flip" + std::to_string(end) + "@" + sys.graph.vertices[u] + ":" +
                                    sys.graph.vertices[std::min(hv, vv)] + "-" +
                                    sys.graph.vertices[std::max(hv, vv)],
                                {{u, sym(pivot_joint)}}, sym(end), std::min(hv, vv),
                                std::max(hv, vv));
                    }
        }
    // Corner switches: joint i jumps across the diagonal of a unit cell
    // whose opposite corners hold joints i-1 and i+1.
    for (int y = 0; y + 1 < hgt; ++y)
        for (int x = 0; x + 1 < w; ++x) {
            const int sw = vid(x, y), se = vid(x + 1, y), nw = vid(x, y + 1), ne = vid(x + 1, y + 1);
            for (int i = 1; i < len; ++i)
                for (auto [d1, d2, m1, m2] :
                     {std::array<int, 4>{sw, ne, se, nw}, std::array<int, 4>{se, nw, sw, ne}}) {
                    for (int flip : {0, 1}) {
                        int a = flip ? d2 : d1, b = flip ? d1 : d2;
                        add_gen("switch" + std::to_string(i) + "@" + sys.graph.vertices[a] + "-" +
                                    sys.graph.vertices[b],
                                {{a, sym(i - 1)}, {b, sym(i + 1)}}, sym(i), std::min(m1, m2),
                                std::max(m1, m2));
                    }
                }
        }
    sys.seed.assign(std::size_t(w * hgt), 0);
    for (int j = 0; j <= len; ++j) sys.seed[std::size_t(vid(j, 0))] = sym(j);
    return sys;
}

ArmState arm_state_from_labels(int n, const RState& u) {
    ArmState s;
    s.n = n;
    for (int i = 0; i < n; ++i)
        if (u[std::size_t(i)] == 1) s.verticals.push_back(i + 1);
    return s;
}

RState arm_labels_from_state(const ArmState& s) {
    RState u(std::size_t(s.n), 0);
    for (int a : s.verticals) u[std::size_t(a - 1)] = 1;
    return u;
}

bool join_irreducibles_check(int n, ArmKind kind, std::size_t cap) {
    auto sys = arm_system(kind, n);
    auto ex = explore(sys, cap);
    auto ord = home_order(ex, ex.seed);
    auto covers = order_covers(ord);
    std::vector<int> lower_cover_count(ex.states.size(), 0);
    for (auto [p, q] : covers) lower_cover_count[std::size_t(q)]++;
    std::vector<int> ji;
    for (std::size_t v = 0; v < ex.states.size(); ++v)
        if (lower_cover_count[v] == 1) ji.push_back(int(v));
    // induced poset on the join-irreducibles
    std::vector<std::string> ids;
    for (int v : ji) ids.push_back(ex.keys[std::size_t(v)]);
    std::vector<std::string> sorted_ids = ids;
    std::sort(sorted_ids.begin(), sorted_ids.end());
    std::vector<int> by_id(ji.size());
    for (std::size_t k = 0; k < ji.size(); ++k)
        by_id[k] = ji[std::size_t(
            std::find(ids.begin(), ids.end(), sorted_ids[k]) - ids.begin())];
    std::vector<Bitset> above(ji.size(), Bitset(ji.size()));
    for (std::size_t a = 0; a < ji.size(); ++a)
        for (std::size_t b = 0; b < ji.size(); ++b)
            if (a != b && ord.less(by_id[a], by_id[b])) above[a].set(b);
    Pip induced = Pip::from_relations(sorted_ids, above, std::vector<Bitset>(ji.size(), Bitset(ji.size())));
    Pip target = kind == ArmKind::Quadrant ? qp_pip(n) : sp_pip(n);
    return pip_isomorphic(induced, target).has_value();
}

}  // namespace cubeplan
