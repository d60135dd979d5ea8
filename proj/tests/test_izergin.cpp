#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dwbc/izergin.hpp"
#include "dwbc/lattice.hpp"

using namespace dwbc;

namespace {

bool near(const Complex& a, const Complex& b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

ModelParams params_n(int n) {
  ModelParams p;
  p.lambda = {0.8, 0.0};
  if (n == 2) {
    p.x = {{0.10, 0.0}, {0.20, 0.0}};
    p.y = {{0.55, 0.0}, {0.85, 0.0}};
  } else if (n == 3) {
    p.x = {{0.10, 0.0}, {0.35, 0.0}, {0.62, 0.0}};
    p.y = {{0.20, 0.0}, {0.55, 0.0}, {0.88, 0.0}};
  } else {
    p.x = {{0.08, 0.0}, {0.27, 0.0}, {0.51, 0.0}, {0.83, 0.0}};
    p.y = {{0.15, 0.0}, {0.42, 0.0}, {0.66, 0.0}, {0.91, 0.0}};
  }
  return p;
}

}  // namespace

TEST_CASE("smallest lattices") {
  ModelParams p;
  p.lambda = {0.8, 0.0};
  CHECK(near(izergin_partition(p), Complex{1.0, 0.0}));
  p.x = {{0.3, 0.0}};
  p.y = {{0.6, 0.0}};
  CHECK(near(izergin_partition(p), bracket(1.0, p.lambda)));
}

TEST_CASE("pinned partition values") {
  CHECK(near(izergin_partition(params_n(2)),
             Complex{2.1141491969991404, 0.0}, 1e-12));
  CHECK(near(izergin_partition(params_n(3)),
             Complex{0.9238043243775043, 0.0}, 1e-12));
  CHECK(near(izergin_partition(params_n(4)),
             Complex{0.2614209483305055, 0.0}, 1e-12));
  ModelParams c = params_n(3);
  c.lambda = {0.7, 0.4};
  CHECK(near(izergin_partition(c),
             Complex{0.49028429026576886, -0.2717722532695778}, 1e-12));
}

TEST_CASE("determinant matches enumeration") {
  for (int n = 2; n <= 4; ++n) {
    const ModelParams p = params_n(n);
    CHECK(near(izergin_partition(p), brute_partition(domain_wall(n), p), 1e-12));
  }
}

TEST_CASE("symmetric under rapidity permutations within a list") {
  const ModelParams p = params_n(4);
  const Complex z = izergin_partition(p);
  ModelParams q = p;
  std::rotate(q.x.begin(), q.x.begin() + 1, q.x.end());
  CHECK(near(izergin_partition(q), z, 1e-10));
  ModelParams r = p;
  std::swap(r.y[0], r.y[3]);
  CHECK(near(izergin_partition(r), z, 1e-10));
}

TEST_CASE("reduced partition function") {
  const ModelParams p = params_n(4);
  CHECK(near(reduced_partition(p, {}, {}), izergin_partition(p)));

  // Dropping rows 1, 3 and columns 1, 2 leaves a 2 x 2 block.
  ModelParams sub;
  sub.lambda = p.lambda;
  sub.x = {p.x[1], p.x[3]};
  sub.y = {p.y[2], p.y[3]};
  const int rx[] = {1, 3};
  const int ry[] = {1, 2};
  CHECK(near(reduced_partition(p, rx, ry), izergin_partition(sub)));
  CHECK(near(reduced_partition(p, rx, ry), brute_partition(domain_wall(2), sub)));

  const int all[] = {1, 2, 3, 4};
  CHECK(near(reduced_partition(p, all, all), Complex{1.0, 0.0}));

  const int one[] = {1};
  CHECK_THROWS_AS(reduced_partition(p, one, {}), RemovalMismatch);
  const int bad[] = {5};
  CHECK_THROWS_AS(reduced_partition(p, bad, one), RemovalMismatch);
  const int dup[] = {2, 2};
  const int two[] = {1, 2};
  CHECK_THROWS_AS(reduced_partition(p, dup, two), RemovalMismatch);
}

TEST_CASE("shape and degeneracy guards") {
  ModelParams p = params_n(3);
  p.y.pop_back();
  CHECK_THROWS_AS(izergin_partition(p), NonSquare);

  ModelParams dup = params_n(3);
  dup.x[2] = dup.x[0];
  CHECK_THROWS_AS(izergin_partition(dup), DegenerateRapidities);

  ModelParams cross = params_n(3);
  cross.x[0] = cross.y[1];  // b(x_1, y_2) = 0
  CHECK_THROWS_AS(izergin_partition(cross), DegenerateRapidities);
}

TEST_CASE("lu decomposition on the determinant kernel at N = 12") {
  const int n = 12;
  ModelParams p;
  p.lambda = {0.9, 0.0};
  for (int i = 0; i < n; ++i) {
    p.x.push_back({0.05 + 0.07 * i, 0.0});
    p.y.push_back({0.09 + 0.07 * i, 0.0});
  }
  std::vector<Complex> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex wa = weight_a(p.x[i], p.y[j], p.lambda);
      const Complex wb = weight_b(p.x[i], p.y[j], p.lambda);
      a[static_cast<std::size_t>(i) * n + j] =
          weight_c(p.x[i], p.y[j], p.lambda) / (wa * wb);
    }

  std::vector<Complex> lu = a;
  std::vector<int> perm;
  const int sign = lu_decompose(lu, n, perm);
  CHECK((sign == 1 || sign == -1));

  // max |PA - LU| relative to max |A|.
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex prod{0.0, 0.0};
      for (int k = 0; k <= std::min(i, j); ++k) {
        const Complex lik =
            k == i ? Complex{1.0, 0.0} : lu[static_cast<std::size_t>(i) * n + k];
        prod += lik * lu[static_cast<std::size_t>(k) * n + j];
      }
      const Complex pa = a[static_cast<std::size_t>(perm[i]) * n + j];
      worst = std::max(worst, std::abs(pa - prod));
      scale = std::max(scale, std::abs(pa));
    }
  CHECK(worst / scale <= 1e-12);

  // The full evaluation stays stable at this size: permutation symmetry
  // exercises both the scaled prefactor and the pivoted determinant.
  const Complex z = izergin_partition(p);
  CHECK(std::isfinite(z.real()));
  CHECK(std::abs(z) > 0.0);
  ModelParams q = p;
  std::rotate(q.x.begin(), q.x.begin() + 5, q.x.end());
  CHECK(near(izergin_partition(q), z, 1e-9));
}

TEST_CASE("lu determinant basics") {
  std::vector<Complex> id = {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
  CHECK(near(lu_determinant(id, 2), Complex{1.0, 0.0}));
  std::vector<Complex> swap = {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
  CHECK(near(lu_determinant(swap, 2), Complex{-1.0, 0.0}));
  std::vector<Complex> singular = {{1, 0}, {2, 0}, {2, 0}, {4, 0}};
  CHECK(near(lu_determinant(singular, 2), Complex{0.0, 0.0}));
}
