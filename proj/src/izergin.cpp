#include "dwbc/izergin.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace dwbc {

namespace {

// Weight overload set so the templated core below works at either
// precision without duplicating the formulas.
Complex wa(const Complex& x, const Complex& y, const Complex& lam) {
  return weight_a(x, y, lam);
}
Complex wb(const Complex& x, const Complex& y, const Complex& lam) {
  return weight_b(x, y, lam);
}
Complex wc(const Complex& x, const Complex& y, const Complex& lam) {
  return weight_c(x, y, lam);
}
ComplexL wa(const ComplexL& x, const ComplexL& y, const ComplexL& lam) {
  return weight_a_l(x, y, lam);
}
ComplexL wb(const ComplexL& x, const ComplexL& y, const ComplexL& lam) {
  return weight_b_l(x, y, lam);
}
ComplexL wc(const ComplexL& x, const ComplexL& y, const ComplexL& lam) {
  return weight_c_l(x, y, lam);
}

// Product accumulator with a split base-2 exponent so long prefactor
// products cannot overflow or underflow before the final assembly.
template <typename F>
struct ScaledProduct {
  std::complex<F> m{1, 0};
  long e = 0;

  void normalize() {
    const F am = std::abs(m);
    if (am == F(0)) {
      e = 0;
      return;
    }
    if (am > F(1e150) || am < F(1e-150)) {
      int ex = 0;
      std::frexp(am, &ex);
      m *= std::ldexp(F(1), -ex);
      e += ex;
    }
  }
  void mul(const std::complex<F>& z) {
    m *= z;
    normalize();
  }
  void div(const std::complex<F>& z) {
    m /= z;
    normalize();
  }
  std::complex<F> value() const {
    return m * std::ldexp(F(1), static_cast<int>(e));
  }
};

template <typename F>
void check_denominator(const std::complex<F>& b,
                       const std::complex<F>& companion, const char* what) {
  const F scale = std::max(F(1), std::abs(companion));
  if (std::abs(b) <= F(kDegeneracyThreshold) * scale) {
    std::ostringstream msg;
    msg << "degenerate parameters: " << what << " vanishes (|" << what
        << "| = " << static_cast<double>(std::abs(b)) << ")";
    throw DegenerateRapidities(msg.str());
  }
}

template <typename F>
int lu_core(std::vector<std::complex<F>>& a, int n, std::vector<int>& perm) {
  if (static_cast<int>(a.size()) != n * n)
    throw DimensionMismatch("matrix storage does not match dimension");
  perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    F best = std::abs(a[static_cast<std::size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const F cand = std::abs(a[static_cast<std::size_t>(i) * n + k]);
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<std::size_t>(k) * n + j],
                  a[static_cast<std::size_t>(piv) * n + j]);
      std::swap(perm[static_cast<std::size_t>(k)],
                perm[static_cast<std::size_t>(piv)]);
      sign = -sign;
    }
    const std::complex<F> pivot = a[static_cast<std::size_t>(k) * n + k];
    if (std::abs(pivot) == F(0)) continue;  // column exhausted, det = 0
    for (int i = k + 1; i < n; ++i) {
      const std::complex<F> f = a[static_cast<std::size_t>(i) * n + k] / pivot;
      a[static_cast<std::size_t>(i) * n + k] = f;
      for (int j = k + 1; j < n; ++j)
        a[static_cast<std::size_t>(i) * n + j] -=
            f * a[static_cast<std::size_t>(k) * n + j];
    }
  }
  return sign;
}

template <typename F>
std::complex<F> lu_det_core(std::vector<std::complex<F>> a, int n) {
  if (n == 0) return {1, 0};
  std::vector<int> perm;
  const int sign = lu_core(a, n, perm);
  std::complex<F> det{F(sign), 0};
  for (int k = 0; k < n; ++k) det *= a[static_cast<std::size_t>(k) * n + k];
  return det;
}

template <typename F>
std::complex<F> izergin_core(const std::complex<F>& lambda,
                             const std::vector<std::complex<F>>& xs,
                             const std::vector<std::complex<F>>& ys) {
  const int n = static_cast<int>(xs.size());
  if (xs.size() != ys.size())
    throw NonSquare("determinant evaluation needs |x| == |y|");
  if (n == 0) return {1, 0};

  const std::complex<F> c = wc(std::complex<F>{0, 0}, std::complex<F>{0, 0},
                               lambda);
  ScaledProduct<F> pre;
  std::vector<std::complex<F>> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::complex<F> a = wa(xs[static_cast<std::size_t>(i)],
                                   ys[static_cast<std::size_t>(j)], lambda);
      const std::complex<F> b = wb(xs[static_cast<std::size_t>(i)],
                                   ys[static_cast<std::size_t>(j)], lambda);
      check_denominator(b, a, "b(x_i, y_j)");
      check_denominator(a, b, "a(x_i, y_j)");
      pre.mul(a);
      pre.mul(b);
      m[static_cast<std::size_t>(i) * n + j] = c / (a * b);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::complex<F> bx = wb(xs[static_cast<std::size_t>(i)],
                                    xs[static_cast<std::size_t>(j)], lambda);
      check_denominator(bx, c, "b(x_i, x_j)");
      pre.div(bx);
      const std::complex<F> by = wb(ys[static_cast<std::size_t>(j)],
                                    ys[static_cast<std::size_t>(i)], lambda);
      check_denominator(by, c, "b(y_j, y_i)");
      pre.div(by);
    }
  pre.mul(lu_det_core(std::move(m), n));
  return pre.value();
}

}  // namespace

int lu_decompose(std::vector<Complex>& a, int n, std::vector<int>& perm) {
  return lu_core(a, n, perm);
}

Complex lu_determinant(std::vector<Complex> a, int n) {
  return lu_det_core(std::move(a), n);
}

Complex izergin_partition(const ModelParams& params) {
  return izergin_core(params.lambda, params.x, params.y);
}

ComplexL izergin_extended(const ComplexL& lambda,
                          const std::vector<ComplexL>& x,
                          const std::vector<ComplexL>& y) {
  return izergin_core(lambda, x, y);
}

Complex reduced_partition(const ModelParams& params,
                          std::span<const int> removed_x,
                          std::span<const int> removed_y) {
  const auto survivors = [](const std::vector<Complex>& src,
                            std::span<const int> removed, const char* axis) {
    std::set<int> gone;
    for (int idx : removed) {
      if (idx < 1 || static_cast<std::size_t>(idx) > src.size()) {
        std::ostringstream msg;
        msg << "removal index " << idx << " outside 1.." << src.size()
            << " on " << axis;
        throw RemovalMismatch(msg.str());
      }
      if (!gone.insert(idx).second) {
        std::ostringstream msg;
        msg << "removal index " << idx << " repeated on " << axis;
        throw RemovalMismatch(msg.str());
      }
    }
    std::vector<Complex> kept;
    kept.reserve(src.size() - gone.size());
    for (std::size_t k = 0; k < src.size(); ++k)
      if (!gone.count(static_cast<int>(k) + 1)) kept.push_back(src[k]);
    return kept;
  };

  ModelParams sub;
  sub.lambda = params.lambda;
  sub.x = survivors(params.x, removed_x, "x");
  sub.y = survivors(params.y, removed_y, "y");
  if (sub.x.size() != sub.y.size())
    throw RemovalMismatch("removals leave a non-square lattice");
  return izergin_partition(sub);
}

}  // namespace dwbc
