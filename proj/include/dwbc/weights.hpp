#pragma once

#include <array>
#include <complex>
#include <vector>

#include "dwbc/errors.hpp"

namespace dwbc {

using Complex = std::complex<double>;

// Any |b| used as a denominator must exceed this threshold times
// max(1, local scale); violations throw DegenerateRapidities, never
// silently produce zero or inf.
inline constexpr double kDegeneracyThreshold = 1e-10;

struct CrossingParameter {
  Complex lambda{1.0, 0.0};
};

// The six conserving vertex types. A1/A2 share weight a, B1/B2 share b,
// C1/C2 share c.
enum class VertexKind { A1, A2, B1, B2, C1, C2 };
enum class WeightClass { A, B, C };

WeightClass weight_class(VertexKind kind);
const char* to_string(VertexKind kind);
const char* to_string(WeightClass cls);

// Row rapidities x (front = top row) and column rapidities y. Columns are
// numbered right to left: y.front() belongs to the RIGHTMOST column.
struct ModelParams {
  Complex lambda{1.0, 0.0};
  std::vector<Complex> x;
  std::vector<Complex> y;
};

// bracket(u) = sinh(lambda * u); the building block of every weight.
Complex bracket(Complex u, Complex lambda);

// a = bracket(y - x + 1), b = bracket(y - x), c = bracket(1).
Complex weight_a(Complex x, Complex y, Complex lambda);
Complex weight_b(Complex x, Complex y, Complex lambda);
Complex weight_c(Complex x, Complex y, Complex lambda);

// Extended-precision mirrors. The closed rolling sums cancel heavily
// (coefficient products of order 1e3 collapsing to results of order 1e-3),
// so the formula paths evaluate on long double internally and convert back
// to double at the API boundary. Enumeration oracles stay on double.
using ComplexL = std::complex<long double>;

inline ComplexL bracket_l(const ComplexL& u, const ComplexL& lambda) {
  return std::sinh(lambda * u);
}
inline ComplexL weight_a_l(const ComplexL& x, const ComplexL& y,
                           const ComplexL& lambda) {
  return bracket_l(y - x + ComplexL{1.0L, 0.0L}, lambda);
}
inline ComplexL weight_b_l(const ComplexL& x, const ComplexL& y,
                           const ComplexL& lambda) {
  return bracket_l(y - x, lambda);
}
inline ComplexL weight_c_l(const ComplexL&, const ComplexL&,
                           const ComplexL& lambda) {
  return bracket_l(ComplexL{1.0L, 0.0L}, lambda);
}
Complex class_weight(WeightClass cls, Complex x, Complex y, Complex lambda);
Complex vertex_weight(VertexKind kind, Complex x, Complex y,
                      const ModelParams& params);

// Two-arrow basis order: (up,up), (up,down), (down,up), (down,down).
using Matrix4 = std::array<std::array<Complex, 4>, 4>;
Matrix4 r_matrix(Complex x, Complex y, const ModelParams& params);

// Relative max-abs residual of R12 R13 R23 = R23 R13 R12 on the
// three-arrow space. Falls back to the absolute residual when both sides
// vanish at machine scale.
double ybe_residual(Complex x, Complex y, Complex z, const ModelParams& params);

// The scalar component of the same identity that drives the roll step:
//   b(y,z) a(x,z) c(x,y) + c(y,z) c(x,z) b(x,y) - c(x,y) b(x,z) a(y,z) = 0,
// returned as |sum| / max(1, largest term magnitude).
double ybe_scalar_residual(Complex x, Complex y, Complex z,
                           const ModelParams& params);

enum class RollAxis { Rows, Columns };

// f = a/b and g = c/b evaluated at (x_i, x_j) (Rows) or (y_i, y_j)
// (Columns); i, j are 1-based. Coincident rapidities make b vanish and
// throw DegenerateRapidities.
struct RollRatios {
  Complex f;
  Complex g;
};
RollRatios roll_ratios(int i, int j, const ModelParams& params, RollAxis axis);

// g/f = c/a. Well defined also at i == j, where it equals 1 exactly; used
// by the closed rolling sums, whose alpha == r term carries ratio 1.
Complex roll_ratio_gf(int i, int j, const ModelParams& params, RollAxis axis);

}  // namespace dwbc
