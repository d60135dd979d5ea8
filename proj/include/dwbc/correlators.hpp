#pragma once

#include "dwbc/izergin.hpp"
#include "dwbc/lattice.hpp"

namespace dwbc {

// Every correlator is available in two evaluations: the closed formula and
// the brute-force enumeration oracle. Both take the FULL N x N parameter
// set; sublattice parameter lists are carved internally.
enum class Backend { Formula, Oracle };

struct OnePointSpec {
  int n = 0;
  int r = 0;  // row of the inverted right-boundary arrow, 1-based from top
};

// case 1: arrows inverted on the right boundary at rows r1 < r2.
// case 2: right boundary at row r plus top boundary at column c (from the
//         right); both must lie in 2..N.
// case 3: right boundary at row r1, left boundary at row r2, r1 != r2.
// case 4: right and left boundary both at row r1 (r2, col unused).
struct TwoPointSpec {
  int case_id = 0;
  int n = 0;
  int r1 = 0;
  int r2 = 0;
  int col = 0;
};

// Weight of the forced rightmost column when its c-vertex sits at row r:
//   prod_{i<r} b(x_i, y_1) * c(x_r, y_1) * prod_{i>r} a(x_i, y_1).
Complex right_column_weight(int r, const ModelParams& params);

// Boundary of the N x (N-1) lattice left of the frozen column, with the
// right-boundary arrow inverted at row r. Columns carry y_2..y_N.
BoundarySpec onepoint_left_boundary(int n, int r);

// Parameters for that lattice: all rows, columns y_2..y_N.
ModelParams left_part_params(const ModelParams& params);

// Boundary and parameters of the lattice a two-point function lives on.
// Cases 1, 3, 4: N x (N-2), columns y_3..y_N. Case 2: the (N-1) x (N-1)
// block spanned by rows x_2..x_N and columns y_2..y_N.
BoundarySpec twopoint_boundary(const TwoPointSpec& spec);
ModelParams twopoint_sub_params(const TwoPointSpec& spec,
                                const ModelParams& params);

// Coefficient of the alpha-th term of the closed rolling sums. `skip`
// omits one index from the f-product (0 = none); `lo` is the lowest row
// participating in the roll. The alpha == r (resp. beta == c) coefficient
// carries ratio 1; right rolls put the bubbled rapidity second in every
// f/g argument pair, left rolls put it first, and column rolls follow the
// right pattern on the y axis. All readings are pinned by the enumeration
// oracle in the tests.
Complex right_roll_coefficient(int r, int alpha, const ModelParams& params,
                               int lo = 1, int skip = 0);
Complex left_roll_coefficient(int r, int alpha, const ModelParams& params,
                              int skip = 0);
Complex column_roll_coefficient(int c, int beta, const ModelParams& params,
                                int skip = 0);

// Residual of the one-step roll identity on the left-part lattice, with
// every object evaluated by the enumeration oracle:
//   F_i^i = f_{i-1,i} F_{i-1}^i + g_{i,i-1} F_{i-1}^{i-1},
// where F_{i-1}^i is F_{i-1}^{i-1} with x_{i-1} and x_i exchanged.
// Relative residual; requires 2 <= i <= N.
double roll_step_check(int i, const ModelParams& params,
                       int cap = kDefaultEnumerationCap);

// One-point building block: partition function of the left part with the
// inversion at row r. Formula backend evaluates the closed rolling sum
//   F_r^r = sum_{alpha<=r} [prod_{j>=2} a(x_alpha, y_j)] * coef *
//           Z_{N-1}(x minus x_alpha, y minus y_1).
Complex left_onepoint(int r, const ModelParams& params,
                      Backend backend = Backend::Formula,
                      int cap = kDefaultEnumerationCap);

// Boundary one-point function H_N^r = rcw(r) * F_r^r / Z_N. Sums to 1
// over r. Throws ZeroPartition when Z_N vanishes at machine scale.
Complex bpz_onepoint(int r, const ModelParams& params);

Complex twopoint_case1(int r1, int r2, const ModelParams& params,
                       Backend backend = Backend::Formula,
                       int cap = kDefaultEnumerationCap);
Complex twopoint_case2(int r, int c, const ModelParams& params,
                       Backend backend = Backend::Formula,
                       int cap = kDefaultEnumerationCap);
Complex twopoint_case3(int r1, int r2, const ModelParams& params,
                       Backend backend = Backend::Formula,
                       int cap = kDefaultEnumerationCap);
Complex twopoint_case4(int i, const ModelParams& params,
                       Backend backend = Backend::Formula,
                       int cap = kDefaultEnumerationCap);

Complex twopoint(const TwoPointSpec& spec, const ModelParams& params,
                 Backend backend = Backend::Formula,
                 int cap = kDefaultEnumerationCap);

}  // namespace dwbc
