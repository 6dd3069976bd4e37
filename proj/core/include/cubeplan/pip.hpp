#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubeplan/bitset.hpp"
#include "cubeplan/errors.hpp"

namespace cubeplan {

using BigInt = boost::multiprecision::cpp_int;

/// A consistent order ideal is represented as a Bitset over the owning Pip's
/// element ranks. Idealness/consistency are checked by predicates, not types.
using Ideal = Bitset;

inline constexpr std::size_t kDefaultIdealCap = std::size_t(1) << 20;
inline constexpr std::size_t kDefaultEnumCap = std::size_t(1) << 20;

/// Finite poset with inconsistent pairs. Elements are opaque string ids,
/// stored sorted; the order is given by cover relations with reachability
/// computed once at construction. Inconsistent pairs are stored minimally
/// and the upward closure is materialized for O(1) queries.
///
/// Immutable after construction; all operations are pure.
class Pip {
public:
    Pip() = default;

    /// Build from cover relations (a,b) meaning a is covered by b, plus
    /// minimal inconsistent pairs. Unknown or duplicate ids throw
    /// std::invalid_argument. A cyclic cover relation is representable
    /// (so `validate` can report it) but most operations refuse it.
    static Pip from_covers(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& covers,
                           const std::vector<std::pair<std::string, std::string>>& inconsistent);

    /// Build from a full strict order and a full (upward-closed) symmetric
    /// inconsistency relation, both over element ranks of `elements` after
    /// id-sorting. Throws std::invalid_argument if the order is not
    /// transitive or the inconsistency relation is not upward closed.
    static Pip from_relations(std::vector<std::string> elements,
                              const std::vector<Bitset>& strictly_above,
                              const std::vector<Bitset>& incompatible);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& elements() const { return ids_; }
    const std::string& id(std::size_t i) const { return ids_[i]; }
    std::optional<std::size_t> find(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;  // throws if absent

    bool acyclic() const { return acyclic_; }

    bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
    bool less(std::size_t a, std::size_t b) const { return a != b && up_[a].test(b); }
    /// {b : b >= a}, inclusive.
    const Bitset& up_set(std::size_t a) const { return up_[a]; }
    /// {b : b <= a}, inclusive.
    const Bitset& down_set(std::size_t a) const { return down_[a]; }

    const std::vector<std::pair<std::size_t, std::size_t>>& cover_pairs() const {
        return covers_;
    }
    /// Minimal inconsistent pairs, canonically ordered.
    const std::vector<std::pair<std::size_t, std::size_t>>& minimal_inconsistent_pairs() const {
        return min_incons_;
    }
    /// The raw pairs the Pip was built from (used by validation).
    const std::vector<std::pair<std::size_t, std::size_t>>& stored_inconsistent_pairs() const {
        return raw_incons_;
    }

    /// Closed inconsistency relation.
    bool inconsistent(std::size_t a, std::size_t b) const { return incompat_[a].test(b); }
    const Bitset& incompatible_with(std::size_t a) const { return incompat_[a]; }

    /// Elements of `s` minimal / maximal within the induced subposet.
    Bitset minimal_of(const Bitset& s) const;
    Bitset maximal_of(const Bitset& s) const;

    Bitset empty_set() const { return Bitset(size()); }
    Bitset full_set() const;
    Bitset make_set(const std::vector<std::string>& ids) const;
    std::vector<std::string> set_ids(const Bitset& s) const;

    /// Elements in a topological order of the cover relation.
    const std::vector<std::size_t>& topo_order() const { return topo_; }

private:
    void finalize();

    std::vector<std::string> ids_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
    std::vector<std::pair<std::size_t, std::size_t>> raw_incons_;
    std::vector<std::pair<std::size_t, std::size_t>> min_incons_;
    std::vector<Bitset> up_, down_, incompat_;
    std::vector<std::size_t> topo_;
    bool acyclic_ = true;
    std::vector<std::string> cycle_witness_;

    friend std::optional<struct PipViolation> validate(const Pip&);
};

/// A named axiom violation with witness element ids.
struct PipViolation {
    std::string axiom;  // "partial-order" | "axiom-1" | "axiom-2"
    std::vector<std::string> witnesses;
    std::string message;
};

/// Checks acyclicity and PIP axiom 1 on the stored pairs; axiom 2 holds by
/// construction because the closure is generated from the stored pairs.
std::optional<PipViolation> validate(const Pip& p);

/// Treats the stored pairs as the complete inconsistency relation and
/// additionally reports axiom-2 (upward closure) violations.
std::optional<PipViolation> validate_closed(const Pip& p);

bool is_consistent_ideal(const Pip& p, const Bitset& s);

/// All consistent order ideals in canonical order (by size, then
/// lexicographically by member ranks). Throws CapExceeded past `cap`.
std::vector<Bitset> consistent_ideals(const Pip& p, std::size_t cap = kDefaultIdealCap);

/// Exact number of linear extensions of the ideal `b` (as a subposet).
BigInt linear_extension_count(const Pip& p, const Bitset& b);

/// Visit linear extensions of `b` in lexicographic rank order; the callback
/// returns false to stop early.
void for_each_linear_extension(const Pip& p, const Bitset& b,
                               const std::function<bool(const std::vector<std::size_t>&)>& fn);

std::vector<std::vector<std::size_t>> enumerate_linear_extensions(
    const Pip& p, const Bitset& b, std::size_t cap = kDefaultEnumCap);

/// Number of elements in a longest chain of `b`; 0 for the empty set.
std::size_t depth(const Pip& p, const Bitset& b);

/// Reroot at the consistent ideal `a`: with I = a and J = P - I,
///   j1 < j2 stays, i1 < i2 reverses, i < j becomes inconsistent,
///   j1 ~ j2 stays inconsistent, i ~ j becomes i < j.
/// Element ids are preserved. Throws std::invalid_argument if `a` is not a
/// consistent ideal.
Pip reroot(const Pip& p, const Bitset& a);

/// Vertex bijection between X(P) and X(reroot(P,a)): an ideal B of P maps
/// to a XOR B, which equals (I - B_I) u B_J. The map is an involution.
Bitset reroot_vertex_image(const Bitset& a, const Bitset& b);

/// Isomorphism of PIPs: a bijection preserving the order and the closed
/// inconsistency relation in both directions. Returns the element map
/// p1 -> p2 when one exists.
std::optional<std::vector<std::size_t>> pip_isomorphic(const Pip& p1, const Pip& p2);

}  // namespace cubeplan
