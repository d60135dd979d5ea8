#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dwbc/weights.hpp"

namespace dwbc {

// Exhaustive enumeration refuses lattices with more vertices than this
// unless the caller raises the cap explicitly.
inline constexpr int kDefaultEnumerationCap = 49;

// Orientation of an external arrow relative to the lattice.
enum class Orientation : std::uint8_t { In, Out };
enum class Side { Left, Right, Top, Bottom };

// External arrows. left/right are indexed by row (front = top row);
// top/bottom are indexed by column in the public numbering, i.e. front =
// RIGHTMOST column.
struct BoundarySpec {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<Orientation> left, right, top, bottom;
};

// Domain walls: left/right in, top/bottom out.
BoundarySpec domain_wall(int n);

// dwbc-like boundary with the listed external arrows flipped. An inversion
// is (side, 1-based index along that side); column indices count from the
// right. Repeating a (side, index) pair throws DuplicateInversion.
BoundarySpec make_boundary(int n_rows, int n_cols,
                           const std::vector<std::pair<Side, int>>& inversions);

// Absolute bond directions: true = rightward (horizontal) or upward
// (vertical). Storage columns run left to right, so public column j of an
// n_cols-wide grid lives at storage column n_cols - j.
struct ArrowGrid {
  int n_rows = 0;
  int n_cols = 0;
  // h has n_rows x (n_cols + 1) entries: h(i, s) is the bond on the left
  // side of the vertex at row i, storage column s; h(i, n_cols) is the
  // right edge. v has (n_rows + 1) x n_cols entries: v(i, s) is the bond
  // above row i; v(n_rows, s) is the bottom edge.
  std::vector<std::uint8_t> h, v;

  ArrowGrid() = default;
  ArrowGrid(int rows, int cols)
      : n_rows(rows),
        n_cols(cols),
        h(static_cast<std::size_t>(rows) * (cols + 1), 0),
        v(static_cast<std::size_t>(rows + 1) * cols, 0) {}

  bool h_at(int row, int scol) const {
    return h[static_cast<std::size_t>(row) * (n_cols + 1) + scol] != 0;
  }
  bool v_at(int vrow, int scol) const {
    return v[static_cast<std::size_t>(vrow) * n_cols + scol] != 0;
  }
  void set_h(int row, int scol, bool right) {
    h[static_cast<std::size_t>(row) * (n_cols + 1) + scol] = right ? 1 : 0;
  }
  void set_v(int vrow, int scol, bool up) {
    v[static_cast<std::size_t>(vrow) * n_cols + scol] = up ? 1 : 0;
  }

  static int storage_col(int n_cols, int public_col) {
    return n_cols - public_col;
  }
};

// Classify the vertex at 1-based (row, col), col counted from the right.
// Throws NotConserving for any of the ten zero-weight arrow patterns and
// IndexOutOfRange for bad coordinates.
VertexKind classify_vertex(const ArrowGrid& grid, int row, int col);

// Conjunctive vertex-class constraints used to filter enumeration sums.
struct VertexConstraint {
  int row = 0;  // 1-based from the top
  int col = 0;  // 1-based from the right
  WeightClass cls = WeightClass::C;
};
using VertexPredicate = std::vector<VertexConstraint>;

// Depth-first enumeration of all arrow configurations compatible with the
// boundary. Deterministic: vertices are visited row-major (top to bottom,
// storage left to right) and the "up" branch of an undetermined outgoing
// vertical bond is explored before "down". The grid passed to the visitor
// is only valid during the call. Throws CapExceeded when
// n_rows * n_cols > cap.
void enumerate_configurations(const BoundarySpec& boundary,
                              const std::function<void(const ArrowGrid&)>& visit,
                              int cap = kDefaultEnumerationCap);

std::int64_t count_configurations(const BoundarySpec& boundary,
                                  int cap = kDefaultEnumerationCap);

// Product of vertex weights; row i carries x_i, public column j carries
// y_j. params.x / params.y sizes must match the grid.
Complex config_weight(const ArrowGrid& grid, const ModelParams& params);

// Sum of config_weight over all configurations that satisfy the filter
// (all constraints at once). The enumeration oracle everything else is
// checked against.
Complex brute_partition(const BoundarySpec& boundary, const ModelParams& params,
                        const VertexPredicate* filter = nullptr,
                        int cap = kDefaultEnumerationCap);

}  // namespace dwbc
