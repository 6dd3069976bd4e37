#include "cubeplan/pip.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace cubeplan {

namespace {

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

std::optional<std::size_t> Pip::find(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return std::size_t(it - ids_.begin());
}

std::size_t Pip::index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw std::invalid_argument("unknown element id: " + id);
    return *i;
}

Bitset Pip::full_set() const {
    Bitset s(size());
    for (std::size_t i = 0; i < size(); ++i) s.set(i);
    return s;
}

Bitset Pip::make_set(const std::vector<std::string>& ids) const {
    Bitset s(size());
    for (const auto& id : ids) s.set(index_of(id));
    return s;
}

std::vector<std::string> Pip::set_ids(const Bitset& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t i) { out.push_back(ids_[i]); });
    return out;
}

Bitset Pip::minimal_of(const Bitset& s) const {
    Bitset out(size());
    s.for_each([&](std::size_t e) {
        Bitset strictly_below = down_[e] & s;
        strictly_below.reset(e);
        if (strictly_below.none()) out.set(e);
    });
    return out;
}

Bitset Pip::maximal_of(const Bitset& s) const {
    Bitset out(size());
    s.for_each([&](std::size_t e) {
        Bitset strictly_above = up_[e] & s;
        strictly_above.reset(e);
        if (strictly_above.none()) out.set(e);
    });
    return out;
}

Pip Pip::from_covers(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& covers,
                     const std::vector<std::pair<std::string, std::string>>& inconsistent) {
    Pip p;
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
        throw std::invalid_argument("duplicate element id");
    p.ids_ = std::move(elements);
    for (const auto& [a, b] : covers) {
        auto ia = p.index_of(a), ib = p.index_of(b);
        if (ia == ib) throw std::invalid_argument("cover relates an element to itself: " + a);
        p.covers_.emplace_back(ia, ib);
    }
    std::sort(p.covers_.begin(), p.covers_.end());
    p.covers_.erase(std::unique(p.covers_.begin(), p.covers_.end()), p.covers_.end());
    for (const auto& [a, b] : inconsistent)
        p.raw_incons_.push_back(ordered(p.index_of(a), p.index_of(b)));
    std::sort(p.raw_incons_.begin(), p.raw_incons_.end());
    p.raw_incons_.erase(std::unique(p.raw_incons_.begin(), p.raw_incons_.end()),
                        p.raw_incons_.end());
    p.finalize();
    return p;
}

void Pip::finalize() {
    const std::size_t n = ids_.size();
    // Kahn topological sort of the cover digraph.
    std::vector<std::vector<std::size_t>> succ(n), pred(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [a, b] : covers_) {
        succ[a].push_back(b);
        pred[b].push_back(a);
        indeg[b]++;
    }
    topo_.clear();
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    std::vector<std::size_t> deg = indeg;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        topo_.push_back(v);
        for (auto w : succ[v])
            if (--deg[w] == 0) stack.push_back(w);
    }
    acyclic_ = topo_.size() == n;
    if (!acyclic_) {
        for (std::size_t i = 0; i < n; ++i)
            if (deg[i] > 0) cycle_witness_.push_back(ids_[i]);
        up_.assign(n, Bitset(n));
        down_.assign(n, Bitset(n));
        incompat_.assign(n, Bitset(n));
        return;
    }
    // Inclusive reachability, accumulated along the topological order.
    up_.assign(n, Bitset(n));
    down_.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) down_[i].set(i);
    for (auto v : topo_)
        for (auto w : succ[v]) down_[w] |= down_[v];
    for (std::size_t i = 0; i < n; ++i) up_[i].set(i);
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it)
        for (auto w : succ[*it]) up_[*it] |= up_[w];
    // Normalize the stored covers to the Hasse diagram of the reachability
    // order, so equal posets compare equal regardless of input redundancy.
    covers_.clear();
    for (std::size_t a = 0; a < n; ++a) {
        up_[a].for_each([&](std::size_t b) {
            if (b == a) return;
            Bitset between = up_[a] & down_[b];
            between.reset(a);
            between.reset(b);
            if (between.none()) covers_.push_back({a, b});
        });
    }
    std::sort(covers_.begin(), covers_.end());
    // Closure of the inconsistency relation: {p,q} stored makes every
    // {p',q'} with p' >= p, q' >= q inconsistent.
    incompat_.assign(n, Bitset(n));
    for (auto [p, q] : raw_incons_) {
        up_[p].for_each([&](std::size_t a) { incompat_[a] |= up_[q]; });
        up_[q].for_each([&](std::size_t a) { incompat_[a] |= up_[p]; });
    }
    // Reduce the closure to its minimal pairs.
    min_incons_.clear();
    for (std::size_t a = 0; a < n; ++a) {
        incompat_[a].for_each([&](std::size_t b) {
            if (b <= a) return;
            bool minimal = true;
            down_[a].for_each([&](std::size_t a2) {
                if (a2 != a && incompat_[a2].test(b)) minimal = false;
            });
            down_[b].for_each([&](std::size_t b2) {
                if (b2 != b && incompat_[a].test(b2)) minimal = false;
            });
            if (minimal) min_incons_.push_back({a, b});
        });
    }
    std::sort(min_incons_.begin(), min_incons_.end());
}

Pip Pip::from_relations(std::vector<std::string> elements,
                        const std::vector<Bitset>& strictly_above,
                        const std::vector<Bitset>& incompatible) {
    const std::size_t n = elements.size();
    std::vector<std::string> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != elements)
        throw std::invalid_argument("from_relations expects id-sorted elements");
    // Covers = transitive reduction of the strict order.
    std::vector<std::pair<std::string, std::string>> covers;
    for (std::size_t a = 0; a < n; ++a) {
        strictly_above[a].for_each([&](std::size_t b) {
            if (b == a) return;
            bool cover = true;
            strictly_above[a].for_each([&](std::size_t m) {
                if (m != a && m != b && strictly_above[m].test(b)) cover = false;
            });
            if (cover) covers.push_back({elements[a], elements[b]});
        });
    }
    // Minimal pairs of the inconsistency relation, using the given order.
    auto leq = [&](std::size_t x, std::size_t y) { return x == y || strictly_above[x].test(y); };
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t a = 0; a < n; ++a) {
        incompatible[a].for_each([&](std::size_t b) {
            if (b <= a) return;
            bool minimal = true;
            for (std::size_t a2 = 0; a2 < n && minimal; ++a2) {
                if (!leq(a2, a)) continue;
                for (std::size_t b2 = 0; b2 < n; ++b2) {
                    if (a2 == a && b2 == b) continue;
                    if (leq(b2, b) && incompatible[a2].test(b2)) {
                        minimal = false;
                        break;
                    }
                }
            }
            if (minimal) pairs.push_back({elements[a], elements[b]});
        });
    }
    Pip p = from_covers(std::move(elements), covers, pairs);
    if (!p.acyclic_) throw std::invalid_argument("relation is not a strict partial order");
    for (std::size_t a = 0; a < n; ++a) {
        Bitset expect = strictly_above[a];
        expect.set(a);
        if (!(p.up_[a] == expect))
            throw std::invalid_argument("relation is not transitively closed");
        if (!(p.incompat_[a] == incompatible[a]))
            throw std::invalid_argument("inconsistency relation is not upward closed");
    }
    return p;
}

std::optional<PipViolation> validate(const Pip& p) {
    if (!p.acyclic_)
        return PipViolation{"partial-order", p.cycle_witness_,
                            "cover relation contains a cycle"};
    for (auto [a, b] : p.raw_incons_) {
        if (a == b)
            return PipViolation{"axiom-1",
                                {p.id(a)},
                                "element is inconsistent with itself (it is its own upper bound)"};
        Bitset common = p.up_set(a) & p.up_set(b);
        if (common.any()) {
            std::size_t r = common.members().front();
            return PipViolation{
                "axiom-1",
                {p.id(a), p.id(b), p.id(r)},
                "inconsistent pair {" + p.id(a) + "," + p.id(b) + "} has common upper bound " +
                    p.id(r)};
        }
    }
    return std::nullopt;
}

std::optional<PipViolation> validate_closed(const Pip& p) {
    if (auto v = validate(p)) return v;
    auto stored = [&](std::size_t a, std::size_t b) {
        return std::binary_search(p.stored_inconsistent_pairs().begin(),
                                  p.stored_inconsistent_pairs().end(), ordered(a, b));
    };
    for (auto [a, b] : p.stored_inconsistent_pairs()) {
        PipViolation out;
        bool bad = false;
        p.up_set(a).for_each([&](std::size_t a2) {
            p.up_set(b).for_each([&](std::size_t b2) {
                if (bad || stored(a2, b2)) return;
                bad = true;
                out = PipViolation{"axiom-2",
                                   {p.id(a), p.id(b), p.id(a2), p.id(b2)},
                                   "{" + p.id(a2) + "," + p.id(b2) + "} is above inconsistent {" +
                                       p.id(a) + "," + p.id(b) + "} but is not listed"};
            });
        });
        if (bad) return out;
    }
    return std::nullopt;
}

bool is_consistent_ideal(const Pip& p, const Bitset& s) {
    bool ok = true;
    s.for_each([&](std::size_t e) {
        if (!ok) return;
        if (!p.down_set(e).subset_of(s)) ok = false;
        if (p.incompatible_with(e).intersects(s)) ok = false;
    });
    return ok;
}

std::vector<Bitset> consistent_ideals(const Pip& p, std::size_t cap) {
    if (!p.acyclic()) throw std::invalid_argument("pip is not a partial order");
    const std::size_t n = p.size();
    std::vector<Bitset> out;
    Bitset cur(n);
    // Walk elements in topological order; an element may be added iff all
    // its predecessors are in and nothing inconsistent is in.
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == p.topo_order().size()) {
            if (out.size() >= cap)
                throw CapExceeded("consistent ideal enumeration exceeds cap of " +
                                  std::to_string(cap));
            out.push_back(cur);
            return;
        }
        std::size_t e = p.topo_order()[k];
        self(self, k + 1);
        Bitset below = p.down_set(e);
        below.reset(e);
        if (below.subset_of(cur) && !p.incompatible_with(e).intersects(cur)) {
            cur.set(e);
            self(self, k + 1);
            cur.reset(e);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) {
        std::size_t ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return a.members() < b.members();
    });
    return out;
}

BigInt linear_extension_count(const Pip& p, const Bitset& b) {
    if (!is_consistent_ideal(p, b))
        throw std::invalid_argument("linear_extension_count: not a consistent ideal");
    std::unordered_map<Bitset, BigInt, BitsetHash> memo;
    auto rec = [&](auto&& self, const Bitset& s) -> BigInt {
        if (s.none()) return 1;
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        BigInt total = 0;
        p.maximal_of(s).for_each([&](std::size_t m) {
            Bitset next = s;
            next.reset(m);
            total += self(self, next);
        });
        memo.emplace(s, total);
        return total;
    };
    return rec(rec, b);
}

void for_each_linear_extension(const Pip& p, const Bitset& b,
                               const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (!is_consistent_ideal(p, b))
        throw std::invalid_argument("linear extension enumeration: not a consistent ideal");
    std::vector<std::size_t> seq;
    Bitset rem = b;
    bool stop = false;
    auto rec = [&](auto&& self) -> void {
        if (stop) return;
        if (rem.none()) {
            if (!fn(seq)) stop = true;
            return;
        }
        for (std::size_t m : p.minimal_of(rem).members()) {
            rem.reset(m);
            seq.push_back(m);
            self(self);
            seq.pop_back();
            rem.set(m);
            if (stop) return;
        }
    };
    rec(rec);
}

std::vector<std::vector<std::size_t>> enumerate_linear_extensions(const Pip& p, const Bitset& b,
                                                                  std::size_t cap) {
    std::vector<std::vector<std::size_t>> out;
    bool overflow = false;
    for_each_linear_extension(p, b, [&](const std::vector<std::size_t>& seq) {
        if (out.size() >= cap) {
            overflow = true;
            return false;
        }
        out.push_back(seq);
        return true;
    });
    if (overflow)
        throw CapExceeded("linear extension enumeration exceeds cap of " + std::to_string(cap));
    return out;
}

std::size_t depth(const Pip& p, const Bitset& b) {
    std::vector<std::size_t> len(p.size(), 0);
    std::size_t best = 0;
    for (std::size_t e : p.topo_order()) {
        if (!b.test(e)) continue;
        std::size_t l = 0;
        Bitset below = p.down_set(e) & b;
        below.reset(e);
        below.for_each([&](std::size_t d) { l = std::max(l, len[d]); });
        len[e] = l + 1;
        best = std::max(best, len[e]);
    }
    return best;
}

Pip reroot(const Pip& p, const Bitset& a) {
    if (!is_consistent_ideal(p, a))
        throw std::invalid_argument("reroot: not a consistent ideal");
    const std::size_t n = p.size();
    std::vector<Bitset> above(n, Bitset(n)), incompat(n, Bitset(n));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            bool xi = a.test(x), yi = a.test(y);
            if (!xi && !yi) {
                if (p.less(x, y)) above[x].set(y);
                if (p.inconsistent(x, y)) incompat[x].set(y);
            } else if (xi && yi) {
                if (p.less(y, x)) above[x].set(y);
            } else if (xi && !yi) {
                if (p.inconsistent(x, y)) above[x].set(y);
                if (p.less(x, y)) incompat[x].set(y);
            } else {
                if (p.less(y, x)) incompat[x].set(y);
            }
        }
    }
    return Pip::from_relations(p.elements(), above, incompat);
}

Bitset reroot_vertex_image(const Bitset& a, const Bitset& b) { return a ^ b; }

namespace {

struct ElementInvariant {
    std::size_t below, above, incompat;
    auto operator<=>(const ElementInvariant&) const = default;
};

ElementInvariant invariant_of(const Pip& p, std::size_t e) {
    return {p.down_set(e).count(), p.up_set(e).count(), p.incompatible_with(e).count()};
}

}  // namespace

std::optional<std::vector<std::size_t>> pip_isomorphic(const Pip& p1, const Pip& p2) {
    const std::size_t n = p1.size();
    if (n != p2.size()) return std::nullopt;
    if (p1.cover_pairs().size() != p2.cover_pairs().size()) return std::nullopt;
    if (p1.minimal_inconsistent_pairs().size() != p2.minimal_inconsistent_pairs().size())
        return std::nullopt;
    std::vector<ElementInvariant> inv1(n), inv2(n);
    for (std::size_t i = 0; i < n; ++i) {
        inv1[i] = invariant_of(p1, i);
        inv2[i] = invariant_of(p2, i);
    }
    {
        auto s1 = inv1, s2 = inv2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }
    // Most-constrained-first element order.
    std::map<ElementInvariant, std::size_t> freq;
    for (auto& v : inv2) freq[v]++;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return freq[inv1[a]] < freq[inv1[b]]; });

    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    auto compatible = [&](std::size_t a, std::size_t img) {
        if (inv1[a] != inv2[img]) return false;
        for (std::size_t b = 0; b < n; ++b) {
            if (map[b] == n) continue;
            if (p1.less(a, b) != p2.less(img, map[b])) return false;
            if (p1.less(b, a) != p2.less(map[b], img)) return false;
            if (p1.inconsistent(a, b) != p2.inconsistent(img, map[b])) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == n) return true;
        std::size_t a = order[k];
        for (std::size_t img = 0; img < n; ++img) {
            if (used[img] || !compatible(a, img)) continue;
            map[a] = img;
            used[img] = true;
            if (self(self, k + 1)) return true;
            used[img] = false;
            map[a] = n;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return map;
}

}  // namespace cubeplan
