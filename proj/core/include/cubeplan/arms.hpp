#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubeplan/pip.hpp"
#include "cubeplan/reconfig.hpp"

namespace cubeplan {

enum class ArmKind { Quadrant, Strip };

/// Arm state, identified by the positions of its vertical links (1-based,
/// ascending). Strip states must be spread out (no two consecutive).
struct ArmState {
    int n = 0;
    std::vector<int> verticals;

    friend bool operator==(const ArmState&, const ArmState&) = default;
};

bool valid_arm_state(ArmKind kind, const ArmState& s);

/// Digit-string syntax when n <= 9 (e.g. "3568", "" for the horizontal
/// state), comma-separated otherwise.
std::string format_arm_state(const ArmState& s);
ArmState parse_arm_state(ArmKind kind, int n, const std::string& text);

/// Triangle poset {(x,y) : 0 <= y <= x <= n-1} under the componentwise
/// order, no inconsistent pairs. Element ids are "x,y".
Pip qp_pip(int n);

/// Stacked chains {(k,i) : k >= 1, 1 <= i <= n-2k+2} ordered by
/// (k,i) <= (k',i') iff k <= k' and i >= i'. Element ids are "k,i".
Pip sp_pip(int n);

Bitset arm_state_to_ideal(ArmKind kind, const Pip& p, const ArmState& s);
ArmState arm_ideal_to_state(ArmKind kind, const Pip& p, int n, const Bitset& ideal);

/// Unfold a strip state into its pyramid word: 'N' at vertical positions,
/// 'E' elsewhere. The result never contains "NN".
std::string unfold(const ArmState& strip_state);
ArmState refold(const std::string& fpath_word);
bool fpath_valid(const std::string& word);

enum class PathSymbol : std::uint8_t { N, E, Square, HalfSquare };

/// Path with unresolved squares; encodes one cube of the state complex.
/// A half-square may only be the last symbol; in strip flavor every N or
/// square is followed by E when anything follows.
struct PartialPath {
    ArmKind flavor = ArmKind::Quadrant;
    std::vector<PathSymbol> symbols;

    int length() const;
    int dimension() const;  // squares + half-squares
};

std::vector<PartialPath> enumerate_partial_paths(int n, ArmKind kind,
                                                 std::size_t cap = kDefaultEnumCap);

/// The cube C(I,M) a partial path stands for: I is the ideal of the upper
/// boundary, and each square maps to the maximal element removed by its
/// lower resolution.
std::pair<Bitset, Bitset> partial_path_cube(const Pip& p, int n, const PartialPath& path);

std::vector<BigInt> cube_counts_by_paths(int n, ArmKind kind,
                                         std::size_t cap = kDefaultEnumCap);
std::vector<BigInt> cube_counts_by_series(int n, ArmKind kind);

/// Counts by dimension, computed by both routes; throws std::runtime_error
/// if they disagree and CapExceeded when the enumeration would be too big.
std::vector<BigInt> cube_counts(int n, ArmKind kind, std::size_t cap = kDefaultEnumCap);

std::uint64_t fibonacci(int k);

/// Particle models. Quadrant: n slots, a particle hops to an adjacent empty
/// slot, enters/leaves at slot n. Strip: additionally the slot beyond the
/// target must be empty (repellent particles).
ReconfigSystem quadrant_system(int n);
ReconfigSystem strip_system(int n);
ReconfigSystem arm_system(ArmKind kind, int n);

/// Unpinned snake of `len` links on a grid of rows x cols unit cells.
/// States label grid vertices with the position of the snake joint occupying
/// them; moves are corner switches and 90-degree end flips into free
/// vertices. Seed: the snake lying along the bottom row from the left.
ReconfigSystem snake_system(int len, int rows, int cols);

ArmState arm_state_from_labels(int n, const RState& u);
RState arm_labels_from_state(const ArmState& s);

/// The join-irreducible states of the home order form an induced poset
/// isomorphic to qp_pip(n) / sp_pip(n).
bool join_irreducibles_check(int n, ArmKind kind, std::size_t cap = kDefaultStateCap);

}  // namespace cubeplan
