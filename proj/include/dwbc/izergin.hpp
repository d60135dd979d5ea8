#pragma once

#include <span>
#include <vector>

#include "dwbc/weights.hpp"

namespace dwbc {

// Determinant evaluation of the domain-wall partition function:
//   Z_N = [prod_{i,j} a_ij b_ij / (prod_{i<j} b(x_i,x_j) b(y_j,y_i))] det M,
//   M_ij = c_ij / (a_ij b_ij).
// Sizes of x and y must match (NonSquare otherwise); coincident rapidities
// within either list, or any vanishing a_ij / b_ij, throw
// DegenerateRapidities. N = 0 returns 1 (empty product convention).
Complex izergin_partition(const ModelParams& params);

// Partition function of the sublattice that survives deleting the listed
// rows and columns. removed_x / removed_y hold 1-based indices into
// params.x / params.y; the relative order of the survivors is preserved.
// The two lists must shrink the lattice to a square (RemovalMismatch).
Complex reduced_partition(const ModelParams& params,
                          std::span<const int> removed_x,
                          std::span<const int> removed_y);

// Same determinant evaluation carried out on long double scalars. Used by
// the closed-form correlator sums, whose cancellation would otherwise eat
// through the double mantissa; see the note next to ComplexL.
ComplexL izergin_extended(const ComplexL& lambda,
                          const std::vector<ComplexL>& x,
                          const std::vector<ComplexL>& y);

// In-place LU with partial pivoting on a dense row-major n x n matrix.
// On return `a` holds U in the upper triangle and the unit-lower-diagonal
// L below it; perm[k] is the original row index mapped to row k. Returns
// the permutation sign (+1/-1). Exposed for the conditioning tests.
int lu_decompose(std::vector<Complex>& a, int n, std::vector<int>& perm);

// det via lu_decompose; 0 is a legitimate return (no throw).
Complex lu_determinant(std::vector<Complex> a, int n);

}  // namespace dwbc
