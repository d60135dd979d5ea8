#include "dwbc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwbc {

WeightClass weight_class(VertexKind kind) {
  switch (kind) {
    case VertexKind::A1:
    case VertexKind::A2:
      return WeightClass::A;
    case VertexKind::B1:
    case VertexKind::B2:
      return WeightClass::B;
    default:
      return WeightClass::C;
  }
}

const char* to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::A1: return "A1";
    case VertexKind::A2: return "A2";
    case VertexKind::B1: return "B1";
    case VertexKind::B2: return "B2";
    case VertexKind::C1: return "C1";
    default: return "C2";
  }
}

const char* to_string(WeightClass cls) {
  switch (cls) {
    case WeightClass::A: return "a";
    case WeightClass::B: return "b";
    default: return "c";
  }
}

Complex bracket(Complex u, Complex lambda) { return std::sinh(lambda * u); }

Complex weight_a(Complex x, Complex y, Complex lambda) {
  return bracket(y - x + 1.0, lambda);
}

Complex weight_b(Complex x, Complex y, Complex lambda) {
  return bracket(y - x, lambda);
}

Complex weight_c(Complex x, Complex y, Complex lambda) {
  (void)x;
  (void)y;
  return bracket(1.0, lambda);
}

Complex class_weight(WeightClass cls, Complex x, Complex y, Complex lambda) {
  switch (cls) {
    case WeightClass::A: return weight_a(x, y, lambda);
    case WeightClass::B: return weight_b(x, y, lambda);
    default: return weight_c(x, y, lambda);
  }
}

Complex vertex_weight(VertexKind kind, Complex x, Complex y,
                      const ModelParams& params) {
  return class_weight(weight_class(kind), x, y, params.lambda);
}

Matrix4 r_matrix(Complex x, Complex y, const ModelParams& params) {
  const Complex a = weight_a(x, y, params.lambda);
  const Complex b = weight_b(x, y, params.lambda);
  const Complex c = weight_c(x, y, params.lambda);
  Matrix4 m{};
  m[0][0] = a;
  m[3][3] = a;
  m[1][1] = b;
  m[2][2] = b;
  m[1][2] = c;
  m[2][1] = c;
  return m;
}

namespace {

// 8x8 product helper on the three-arrow space. Slot pair (p, q) says which
// arrow indices the 4x4 matrix acts on; the remaining index is a spectator.
using Matrix8 = std::array<std::array<Complex, 8>, 8>;

int bit_of(int state, int slot) { return (state >> (2 - slot)) & 1; }

int with_bits(int state, int p, int q, int bp, int bq) {
  int s = state;
  s &= ~(1 << (2 - p));
  s &= ~(1 << (2 - q));
  s |= bp << (2 - p);
  s |= bq << (2 - q);
  return s;
}

Matrix8 lift(const Matrix4& m, int p, int q) {
  Matrix8 out{};
  for (int col = 0; col < 8; ++col) {
    const int cp = bit_of(col, p);
    const int cq = bit_of(col, q);
    for (int rp = 0; rp < 2; ++rp) {
      for (int rq = 0; rq < 2; ++rq) {
        const Complex entry = m[rp * 2 + rq][cp * 2 + cq];
        if (entry == Complex{0.0, 0.0}) continue;
        out[with_bits(col, p, q, rp, rq)][col] += entry;
      }
    }
  }
  return out;
}

Matrix8 mul(const Matrix8& a, const Matrix8& b) {
  Matrix8 out{};
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      if (a[i][k] == Complex{0.0, 0.0}) continue;
      for (int j = 0; j < 8; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace

double ybe_residual(Complex x, Complex y, Complex z,
                    const ModelParams& params) {
  const Matrix8 r12 = lift(r_matrix(x, y, params), 0, 1);
  const Matrix8 r13 = lift(r_matrix(x, z, params), 0, 2);
  const Matrix8 r23 = lift(r_matrix(y, z, params), 1, 2);
  const Matrix8 lhs = mul(mul(r12, r13), r23);
  const Matrix8 rhs = mul(mul(r23, r13), r12);
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      diff = std::max(diff, std::abs(lhs[i][j] - rhs[i][j]));
      scale = std::max({scale, std::abs(lhs[i][j]), std::abs(rhs[i][j])});
    }
  if (scale < 1e-300) return diff;  // both sides vanished; report absolute
  return diff / scale;
}

double ybe_scalar_residual(Complex x, Complex y, Complex z,
                           const ModelParams& params) {
  const Complex lam = params.lambda;
  const Complex t1 = weight_b(y, z, lam) * weight_a(x, z, lam) * weight_c(x, y, lam);
  const Complex t2 = weight_c(y, z, lam) * weight_c(x, z, lam) * weight_b(x, y, lam);
  const Complex t3 = weight_c(x, y, lam) * weight_b(x, z, lam) * weight_a(y, z, lam);
  const double scale =
      std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
  return std::abs(t1 + t2 - t3) / scale;
}

namespace {

Complex axis_value(int i, const ModelParams& params, RollAxis axis,
                   const char* which) {
  const std::vector<Complex>& v =
      axis == RollAxis::Rows ? params.x : params.y;
  if (i < 1 || static_cast<std::size_t>(i) > v.size()) {
    std::ostringstream msg;
    msg << "roll index " << which << " = " << i << " outside 1.." << v.size();
    throw IndexOutOfRange(msg.str());
  }
  return v[static_cast<std::size_t>(i) - 1];
}

}  // namespace

RollRatios roll_ratios(int i, int j, const ModelParams& params,
                       RollAxis axis) {
  const Complex u = axis_value(i, params, axis, "i");
  const Complex v = axis_value(j, params, axis, "j");
  const Complex a = weight_a(u, v, params.lambda);
  const Complex b = weight_b(u, v, params.lambda);
  const Complex c = weight_c(u, v, params.lambda);
  const double scale = std::max({1.0, std::abs(a), std::abs(c)});
  if (std::abs(b) <= kDegeneracyThreshold * scale) {
    std::ostringstream msg;
    msg << "rapidities " << i << " and " << j
        << " coincide: |b| = " << std::abs(b);
    throw DegenerateRapidities(msg.str());
  }
  return {a / b, c / b};
}

Complex roll_ratio_gf(int i, int j, const ModelParams& params, RollAxis axis) {
  if (i == j) return {1.0, 0.0};  // c(u,u)/a(u,u) = [1]/[1]
  const Complex u = axis_value(i, params, axis, "i");
  const Complex v = axis_value(j, params, axis, "j");
  const Complex a = weight_a(u, v, params.lambda);
  const Complex c = weight_c(u, v, params.lambda);
  const double scale = std::max(1.0, std::abs(c));
  if (std::abs(a) <= kDegeneracyThreshold * scale) {
    std::ostringstream msg;
    msg << "a-weight vanishes between rapidities " << i << " and " << j;
    throw DegenerateRapidities(msg.str());
  }
  return c / a;
}

}  // namespace dwbc
