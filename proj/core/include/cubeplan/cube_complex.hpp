#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cubeplan/pip.hpp"

namespace cubeplan {

/// Explicit rooted cubical complex. Cubes of dimension >= 1 are stored by
/// their sorted vertex-index sets (2^d entries each); vertices themselves are
/// the 0-cubes. All faces of every stored cube are stored too.
struct CubeComplex {
    std::vector<std::string> vertex_ids;
    std::vector<std::vector<int>> cubes;
    int root = 0;

    std::size_t vertex_count() const { return vertex_ids.size(); }
};

inline int cube_dim(const std::vector<int>& cube) {
    int d = 0;
    for (std::size_t s = cube.size(); s > 1; s >>= 1) ++d;
    return d;
}

/// Cube counts by dimension, starting with the vertex count.
std::vector<std::size_t> f_vector(const CubeComplex& c);

/// Edge list (sorted pairs), extracted from the 1-cubes.
std::vector<std::pair<int, int>> edge_list(const CubeComplex& c);

/// Rooted cube complex of a PIP: vertices are the consistent ideals, one
/// cube C(I,M) per ideal I and M subset of I_max, rooted at the empty ideal.
struct PipComplex {
    CubeComplex complex;
    std::vector<Bitset> ideals;  // vertex rank -> ideal
};
PipComplex complex_from_pip(const Pip& p, std::size_t cap = kDefaultIdealCap);

/// One equivalence class of edges under "opposite edges of a common square".
struct Hyperplane {
    std::vector<std::pair<int, int>> edges;
};

/// The hyperplane classes, partitioning the edge set; deterministic order
/// (by smallest member edge). Throws std::invalid_argument when some 2-cube
/// does not induce exactly four edges.
std::vector<Hyperplane> hyperplanes(const CubeComplex& c);

struct NotCatZeroReport {
    std::string reason;
    std::vector<std::string> witnesses;  // vertex ids involved, when known
    std::optional<std::array<int, 4>> unfilled_square;
};

/// Result of the PIP-reconstruction decision procedure.
struct CatZeroResult {
    std::optional<Pip> pip;
    std::vector<Bitset> vertex_ideals;  // aligned with complex vertices when ok
    std::optional<NotCatZeroReport> failure;
    bool ok() const { return pip.has_value(); }
};

/// Decide whether (c, root) is the rooted cube complex of some PIP, and
/// return that PIP when it is. Hyperplanes are the classes of edges under
/// the opposite-edges-of-a-square relation; each vertex is labeled by the
/// set of classes crossed on a BFS path from the root, and any disagreement
/// between paths, duplicate label, or mismatch between the rebuilt complex
/// and `c` yields a failure report. Throws std::invalid_argument when the
/// complex is disconnected or the root is out of range.
CatZeroResult reconstruct_pip(const CubeComplex& c, int root);
inline CatZeroResult reconstruct_pip(const CubeComplex& c) { return reconstruct_pip(c, c.root); }

/// Root-preserving cube-structure-preserving bijection, when one exists.
/// Backtracking over vertices with color-refinement pruning.
std::optional<std::vector<int>> rooted_isomorphic(const CubeComplex& c1, const CubeComplex& c2);

/// A 4-cycle of edges whose vertex set carries no 2-cube, if any.
std::optional<std::array<int, 4>> find_unfilled_square(const CubeComplex& c);

}  // namespace cubeplan
