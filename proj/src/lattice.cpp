#include "dwbc/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dwbc {

BoundarySpec domain_wall(int n) { return make_boundary(n, n, {}); }

BoundarySpec make_boundary(
    int n_rows, int n_cols,
    const std::vector<std::pair<Side, int>>& inversions) {
  if (n_rows < 0 || n_cols < 0)
    throw ValidationError("boundary dimensions must be non-negative");
  BoundarySpec b;
  b.n_rows = n_rows;
  b.n_cols = n_cols;
  b.left.assign(n_rows, Orientation::In);
  b.right.assign(n_rows, Orientation::In);
  b.top.assign(n_cols, Orientation::Out);
  b.bottom.assign(n_cols, Orientation::Out);
  std::set<std::pair<Side, int>> seen;
  for (const auto& [side, index] : inversions) {
    if (!seen.insert({side, index}).second) {
      std::ostringstream msg;
      msg << "inversion repeated at index " << index;
      throw DuplicateInversion(msg.str());
    }
    const bool horizontal = side == Side::Left || side == Side::Right;
    const int limit = horizontal ? n_rows : n_cols;
    if (index < 1 || index > limit) {
      std::ostringstream msg;
      msg << "inversion index " << index << " outside 1.." << limit;
      throw IndexOutOfRange(msg.str());
    }
    std::vector<Orientation>& edge =
        side == Side::Left ? b.left
        : side == Side::Right ? b.right
        : side == Side::Top ? b.top
                            : b.bottom;
    Orientation& o = edge[static_cast<std::size_t>(index) - 1];
    o = o == Orientation::In ? Orientation::Out : Orientation::In;
  }
  return b;
}

namespace {

void check_boundary_sizes(const BoundarySpec& b) {
  if (static_cast<int>(b.left.size()) != b.n_rows ||
      static_cast<int>(b.right.size()) != b.n_rows ||
      static_cast<int>(b.top.size()) != b.n_cols ||
      static_cast<int>(b.bottom.size()) != b.n_cols)
    throw DimensionMismatch("boundary orientation lists do not match dims");
}

// Absolute bond values at the four edges. Horizontal: true = rightward, so
// In on the left edge is true and In on the right edge is false. Vertical:
// true = upward, so Out on the top edge is true and Out on the bottom edge
// is false.
bool left_bond(const BoundarySpec& b, int row) {
  return b.left[row] == Orientation::In;
}
bool right_bond(const BoundarySpec& b, int row) {
  return b.right[row] == Orientation::Out;
}
bool top_bond(const BoundarySpec& b, int scol) {
  return b.top[b.n_cols - scol - 1] == Orientation::Out;
}
bool bottom_bond(const BoundarySpec& b, int scol) {
  return b.bottom[b.n_cols - scol - 1] == Orientation::In;
}

struct Dfs {
  const BoundarySpec& b;
  const std::function<void(const ArrowGrid&)>& visit;
  ArrowGrid grid;

  Dfs(const BoundarySpec& boundary,
      const std::function<void(const ArrowGrid&)>& v)
      : b(boundary), visit(v), grid(boundary.n_rows, boundary.n_cols) {
    for (int i = 0; i < b.n_rows; ++i) grid.set_h(i, 0, left_bond(b, i));
    for (int s = 0; s < b.n_cols; ++s) {
      grid.set_v(0, s, top_bond(b, s));
      grid.set_v(b.n_rows, s, bottom_bond(b, s));
    }
  }

  void run(int row, int scol) {
    if (row == b.n_rows) {
      visit(grid);
      return;
    }
    if (scol == b.n_cols) {
      run(row + 1, 0);
      return;
    }
    const bool l = grid.h_at(row, scol);
    const bool t = grid.v_at(row, scol);
    // Incoming arrows so far: left bond pointing right, top bond pointing
    // down. The right/bottom pair must supply exactly 2 - that many ins.
    const int need = 2 - (l ? 1 : 0) - (t ? 0 : 1);
    // (right bond, bottom bond) choices; bottom "up" explored first.
    std::pair<bool, bool> opts[2];
    int n_opts = 0;
    if (need == 0) {
      opts[n_opts++] = {true, false};
    } else if (need == 2) {
      opts[n_opts++] = {false, true};
    } else if (need == 1) {
      opts[n_opts++] = {true, true};
      opts[n_opts++] = {false, false};
    } else {
      return;  // over-saturated; no completion exists
    }
    const bool last_col = scol == b.n_cols - 1;
    const bool last_row = row == b.n_rows - 1;
    for (int k = 0; k < n_opts; ++k) {
      const auto [r, bo] = opts[k];
      if (last_col && r != right_bond(b, row)) continue;
      if (last_row && bo != bottom_bond(b, scol)) continue;
      grid.set_h(row, scol + 1, r);
      grid.set_v(row + 1, scol, bo);
      run(row, scol + 1);
    }
  }
};

// Zero-area lattices still carry through-going bonds; a configuration
// exists iff every chain is consistent, and then it is unique and empty.
bool degenerate_consistent(const BoundarySpec& b) {
  if (b.n_cols == 0)
    for (int i = 0; i < b.n_rows; ++i)
      if (left_bond(b, i) != right_bond(b, i)) return false;
  if (b.n_rows == 0)
    for (int s = 0; s < b.n_cols; ++s)
      if (top_bond(b, s) != bottom_bond(b, s)) return false;
  return true;
}

}  // namespace

void enumerate_configurations(
    const BoundarySpec& boundary,
    const std::function<void(const ArrowGrid&)>& visit, int cap) {
  check_boundary_sizes(boundary);
  const long long cells =
      static_cast<long long>(boundary.n_rows) * boundary.n_cols;
  if (cells > cap) {
    std::ostringstream msg;
    msg << "lattice has " << cells << " vertices, enumeration cap is " << cap;
    throw CapExceeded(msg.str());
  }
  if (boundary.n_rows == 0 || boundary.n_cols == 0) {
    if (degenerate_consistent(boundary)) {
      ArrowGrid grid(boundary.n_rows, boundary.n_cols);
      for (int i = 0; i < boundary.n_rows; ++i)
        grid.set_h(i, 0, left_bond(boundary, i));
      for (int s = 0; s < boundary.n_cols; ++s) {
        grid.set_v(0, s, top_bond(boundary, s));
        if (boundary.n_rows > 0)
          grid.set_v(boundary.n_rows, s, bottom_bond(boundary, s));
      }
      visit(grid);
    }
    return;
  }
  Dfs dfs(boundary, visit);
  dfs.run(0, 0);
}

std::int64_t count_configurations(const BoundarySpec& boundary, int cap) {
  std::int64_t n = 0;
  enumerate_configurations(boundary, [&n](const ArrowGrid&) { ++n; }, cap);
  return n;
}

namespace {

// kind from the four absolute bond values; returns the weight-class index
// 0=a, 1=b, 2=c, or -1 when the pattern does not conserve flow.
int class_index(bool l, bool r, bool t, bool bo) {
  const int ins = (l ? 1 : 0) + (r ? 0 : 1) + (t ? 0 : 1) + (bo ? 1 : 0);
  if (ins != 2) return -1;
  if (l == r && t == bo) return l == t ? 0 : 1;
  return 2;
}

}  // namespace

VertexKind classify_vertex(const ArrowGrid& grid, int row, int col) {
  if (row < 1 || row > grid.n_rows || col < 1 || col > grid.n_cols)
    throw IndexOutOfRange("vertex coordinates outside the grid");
  const int s = ArrowGrid::storage_col(grid.n_cols, col);
  const bool l = grid.h_at(row - 1, s);
  const bool r = grid.h_at(row - 1, s + 1);
  const bool t = grid.v_at(row - 1, s);
  const bool bo = grid.v_at(row, s);
  switch (class_index(l, r, t, bo)) {
    case 0: return l ? VertexKind::A1 : VertexKind::A2;
    case 1: return l ? VertexKind::B1 : VertexKind::B2;
    case 2: return l ? VertexKind::C1 : VertexKind::C2;
    default: break;
  }
  std::ostringstream msg;
  msg << "arrow flow not conserved at row " << row << ", column " << col;
  throw NotConserving(msg.str());
}

Complex config_weight(const ArrowGrid& grid, const ModelParams& params) {
  if (static_cast<int>(params.x.size()) != grid.n_rows ||
      static_cast<int>(params.y.size()) != grid.n_cols)
    throw DimensionMismatch("rapidity lists do not match the grid");
  Complex w{1.0, 0.0};
  for (int row = 1; row <= grid.n_rows; ++row)
    for (int col = 1; col <= grid.n_cols; ++col) {
      const VertexKind kind = classify_vertex(grid, row, col);
      w *= vertex_weight(kind, params.x[row - 1], params.y[col - 1], params);
    }
  return w;
}

Complex brute_partition(const BoundarySpec& boundary,
                        const ModelParams& params,
                        const VertexPredicate* filter, int cap) {
  check_boundary_sizes(boundary);
  if (static_cast<int>(params.x.size()) != boundary.n_rows ||
      static_cast<int>(params.y.size()) != boundary.n_cols)
    throw DimensionMismatch("rapidity lists do not match the boundary");

  // Per-site weight table, indexed [row][storage col][class]; storage
  // column s carries y of public column n_cols - s.
  const int rows = boundary.n_rows, cols = boundary.n_cols;
  std::vector<Complex> table(static_cast<std::size_t>(rows) * cols * 3);
  for (int i = 0; i < rows; ++i)
    for (int s = 0; s < cols; ++s) {
      const Complex xi = params.x[static_cast<std::size_t>(i)];
      const Complex yj = params.y[static_cast<std::size_t>(cols - s - 1)];
      const std::size_t base = (static_cast<std::size_t>(i) * cols + s) * 3;
      table[base + 0] = weight_a(xi, yj, params.lambda);
      table[base + 1] = weight_b(xi, yj, params.lambda);
      table[base + 2] = weight_c(xi, yj, params.lambda);
    }

  struct StorageConstraint {
    int row, scol, cls;
  };
  std::vector<StorageConstraint> checks;
  if (filter) {
    for (const VertexConstraint& vc : *filter) {
      if (vc.row < 1 || vc.row > rows || vc.col < 1 || vc.col > cols)
        throw IndexOutOfRange("filter coordinates outside the grid");
      checks.push_back({vc.row - 1, ArrowGrid::storage_col(cols, vc.col),
                        static_cast<int>(vc.cls)});
    }
  }

  Complex total{0.0, 0.0};
  enumerate_configurations(
      boundary,
      [&](const ArrowGrid& grid) {
        for (const StorageConstraint& sc : checks) {
          const int cls = class_index(
              grid.h_at(sc.row, sc.scol), grid.h_at(sc.row, sc.scol + 1),
              grid.v_at(sc.row, sc.scol), grid.v_at(sc.row + 1, sc.scol));
          if (cls != sc.cls) return;
        }
        Complex w{1.0, 0.0};
        for (int i = 0; i < rows; ++i)
          for (int s = 0; s < cols; ++s) {
            const int cls =
                class_index(grid.h_at(i, s), grid.h_at(i, s + 1),
                            grid.v_at(i, s), grid.v_at(i + 1, s));
            w *= table[(static_cast<std::size_t>(i) * cols + s) * 3 + cls];
          }
        total += w;
      },
      cap);
  return total;
}

}  // namespace dwbc
