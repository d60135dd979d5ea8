#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dwbc/correlators.hpp"

using namespace dwbc;

namespace {

bool near(const Complex& a, const Complex& b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

double dev(const Complex& a, const Complex& b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

ModelParams params3() {
  ModelParams p;
  p.lambda = {0.8, 0.0};
  p.x = {{0.10, 0.0}, {0.35, 0.0}, {0.62, 0.0}};
  p.y = {{0.20, 0.0}, {0.55, 0.0}, {0.88, 0.0}};
  return p;
}

ModelParams params4() {
  ModelParams p;
  p.lambda = {0.8, 0.0};
  p.x = {{0.08, 0.0}, {0.27, 0.0}, {0.51, 0.0}, {0.83, 0.0}};
  p.y = {{0.15, 0.0}, {0.42, 0.0}, {0.66, 0.0}, {0.91, 0.0}};
  return p;
}

// Standalone boundary of the frozen rightmost column: every left arrow
// leaves the column except at the c-vertex row, where the interior feeds in.
BoundarySpec column_boundary(int n, int r) {
  std::vector<std::pair<Side, int>> invs;
  for (int i = 1; i <= n; ++i)
    if (i != r) invs.push_back({Side::Left, i});
  return make_boundary(n, 1, invs);
}

}  // namespace

TEST_CASE("right column weight") {
  const ModelParams p = params3();
  const Complex lam = p.lambda;
  const Complex y1 = p.y[0];

  CHECK(near(right_column_weight(1, p),
             weight_c(p.x[0], y1, lam) * weight_a(p.x[1], y1, lam) *
                 weight_a(p.x[2], y1, lam)));
  CHECK(near(right_column_weight(2, p),
             Complex{0.03419867056907268, 0.0}, 1e-12));

  // The closed product equals the one-column lattice it describes.
  for (int r = 1; r <= 3; ++r) {
    ModelParams col;
    col.lambda = lam;
    col.x = p.x;
    col.y = {y1};
    CHECK(near(brute_partition(column_boundary(3, r), col),
               right_column_weight(r, p)));
  }

  CHECK_THROWS_AS(right_column_weight(0, p), IndexOutOfRange);
  CHECK_THROWS_AS(right_column_weight(4, p), IndexOutOfRange);

  ModelParams single;
  single.lambda = lam;
  single.x = {{0.3, 0.0}};
  single.y = {{0.7, 0.0}};
  CHECK(near(right_column_weight(1, single), bracket(1.0, lam)));
}

TEST_CASE("left part shapes") {
  const BoundarySpec b = onepoint_left_boundary(3, 2);
  CHECK(b.n_rows == 3);
  CHECK(b.n_cols == 2);
  CHECK(b.right[1] == Orientation::Out);
  CHECK(b.right[0] == Orientation::In);

  const ModelParams sub = left_part_params(params3());
  CHECK(sub.x.size() == 3);
  REQUIRE(sub.y.size() == 2);
  CHECK(near(sub.y[0], params3().y[1]));
}

TEST_CASE("one-point building block") {
  const ModelParams p = params3();
  const Complex oracle = left_onepoint(2, p, Backend::Oracle);
  const Complex formula = left_onepoint(2, p, Backend::Formula);
  CHECK(near(oracle, Complex{0.5983191409022651, 0.0}, 1e-12));
  CHECK(near(formula, Complex{0.5983191409022659, 0.0}, 1e-12));
  CHECK(dev(formula, oracle) <= 1e-12);

  // r = 1 has the single-term closed form: peel row 1, shrink the lattice.
  Complex peel{1.0, 0.0};
  for (int j = 2; j <= 3; ++j)
    peel *= weight_a(p.x[0], p.y[j - 1], p.lambda);
  const int rx[] = {1};
  const int ry[] = {1};
  CHECK(near(left_onepoint(1, p), peel * reduced_partition(p, rx, ry)));

  // N = 1: the left part is a consistent empty lattice.
  ModelParams one;
  one.lambda = p.lambda;
  one.x = {{0.3, 0.0}};
  one.y = {{0.6, 0.0}};
  CHECK(near(left_onepoint(1, one, Backend::Formula), Complex{1.0, 0.0}));
  CHECK(near(left_onepoint(1, one, Backend::Oracle), Complex{1.0, 0.0}));

  CHECK_THROWS_AS(left_onepoint(4, p), IndexOutOfRange);
  ModelParams dup = p;
  dup.x[1] = dup.x[0];
  CHECK_THROWS_AS(left_onepoint(3, dup, Backend::Formula),
                  DegenerateRapidities);
}

TEST_CASE("closed roll coefficients reproduce enumerated objects") {
  // F_r^r = sum_alpha coef(r, alpha) F_1^alpha, where F_1^alpha lives on
  // the row list with x_alpha pulled to the front. Checked for r = 2, 3
  // against enumeration of every object.
  const ModelParams p = params4();
  const int n = 4;
  const auto f1 = [&](int alpha) {
    ModelParams q;
    q.lambda = p.lambda;
    q.x.push_back(p.x[static_cast<std::size_t>(alpha) - 1]);
    for (int k = 1; k <= n; ++k)
      if (k != alpha) q.x.push_back(p.x[static_cast<std::size_t>(k) - 1]);
    q.y = p.y;
    return brute_partition(onepoint_left_boundary(n, 1), left_part_params(q));
  };
  for (int r = 2; r <= 3; ++r) {
    Complex assembled{0.0, 0.0};
    for (int alpha = 1; alpha <= r; ++alpha)
      assembled += right_roll_coefficient(r, alpha, p) * f1(alpha);
    const Complex direct = left_onepoint(r, p, Backend::Oracle);
    CHECK(dev(assembled, direct) <= 1e-12);
  }

  // The bubbled object itself factors into a peel times a smaller lattice.
  Complex peel{1.0, 0.0};
  for (int j = 2; j <= n; ++j)
    peel *= weight_a(p.x[2], p.y[static_cast<std::size_t>(j) - 1], p.lambda);
  const int rx[] = {3};
  const int ry[] = {1};
  CHECK(near(f1(3), peel * reduced_partition(p, rx, ry)));
}

TEST_CASE("column slicing rebuilds the partition function") {
  for (const ModelParams& p : {params3(), params4()}) {
    const int n = static_cast<int>(p.x.size());
    const Complex z = izergin_partition(p);
    Complex sum_oracle{0.0, 0.0}, sum_formula{0.0, 0.0};
    for (int r = 1; r <= n; ++r) {
      sum_oracle +=
          right_column_weight(r, p) * left_onepoint(r, p, Backend::Oracle);
      sum_formula +=
          right_column_weight(r, p) * left_onepoint(r, p, Backend::Formula);
    }
    CHECK(dev(z, sum_oracle) <= 1e-12);
    CHECK(dev(z, sum_formula) <= 1e-12);
  }
}

TEST_CASE("boundary one-point function") {
  ModelParams one;
  one.lambda = {0.8, 0.0};
  one.x = {{0.3, 0.0}};
  one.y = {{0.6, 0.0}};
  CHECK(near(bpz_onepoint(1, one), Complex{1.0, 0.0}));

  const ModelParams p3 = params3();
  CHECK(near(bpz_onepoint(2, p3), Complex{0.022149408327001584, 0.0}, 1e-12));

  for (const ModelParams& p : {params3(), params4()}) {
    Complex sum{0.0, 0.0};
    for (int r = 1; r <= static_cast<int>(p.x.size()); ++r)
      sum += bpz_onepoint(r, p);
    CHECK(dev(sum, Complex{1.0, 0.0}) <= 1e-10);
  }

  // All rows below all columns keeps every weight positive, so the
  // distribution is real and positive.
  ModelParams pos;
  pos.lambda = {0.8, 0.0};
  pos.x = {{0.08, 0.0}, {0.22, 0.0}, {0.41, 0.0}};
  pos.y = {{0.58, 0.0}, {0.73, 0.0}, {0.92, 0.0}};
  for (int r = 1; r <= 3; ++r) {
    const Complex h = bpz_onepoint(r, pos);
    CHECK(h.real() > 0.0);
    CHECK(std::abs(h.imag()) <= 1e-12 * std::abs(h));
  }
}

TEST_CASE("single roll step, all objects enumerated") {
  const ModelParams p3 = params3();
  CHECK(roll_step_check(2, p3) <= 1e-12);
  CHECK(roll_step_check(3, p3) <= 1e-12);
  CHECK_THROWS_AS(roll_step_check(1, p3), IndexOutOfRange);
  CHECK_THROWS_AS(roll_step_check(4, p3), IndexOutOfRange);
}

TEST_CASE("two-point case 1: both inversions on the right boundary") {
  const ModelParams p = params4();
  CHECK(near(twopoint_case1(1, 3, p), Complex{0.7790905632971459, 0.0},
             5e-12));
  for (int r1 = 1; r1 <= 4; ++r1)
    for (int r2 = r1 + 1; r2 <= 4; ++r2)
      CHECK(dev(twopoint_case1(r1, r2, p, Backend::Formula),
                twopoint_case1(r1, r2, p, Backend::Oracle)) <= 1e-8);

  CHECK_THROWS_AS(twopoint_case1(2, 2, p), InvalidOrder);
  CHECK_THROWS_AS(twopoint_case1(3, 1, p), InvalidOrder);

  // N = 2 collapses to the consistent empty lattice.
  ModelParams p2;
  p2.lambda = {0.8, 0.0};
  p2.x = {{0.10, 0.0}, {0.20, 0.0}};
  p2.y = {{0.55, 0.0}, {0.85, 0.0}};
  CHECK(near(twopoint_case1(1, 2, p2, Backend::Formula), Complex{1.0, 0.0}));
  CHECK(near(twopoint_case1(1, 2, p2, Backend::Oracle), Complex{1.0, 0.0}));
}

TEST_CASE("two-point case 2: right and top boundary") {
  const ModelParams p = params4();
  CHECK(near(twopoint_case2(3, 2, p), Complex{-0.019726783138738324, 0.0},
             5e-12));
  const ModelParams p3 = params3();
  for (int r = 2; r <= 3; ++r)
    for (int c = 2; c <= 3; ++c)
      CHECK(dev(twopoint_case2(r, c, p3, Backend::Formula),
                twopoint_case2(r, c, p3, Backend::Oracle)) <= 1e-8);

  CHECK_THROWS_AS(twopoint_case2(1, 2, p), IndexOutOfRange);
  CHECK_THROWS_AS(twopoint_case2(2, 5, p), IndexOutOfRange);

  // N = 2: a single vertex whose class is forced to b.
  ModelParams p2;
  p2.lambda = {0.8, 0.0};
  p2.x = {{0.10, 0.0}, {0.20, 0.0}};
  p2.y = {{0.55, 0.0}, {0.85, 0.0}};
  const Complex expect = weight_b(p2.x[1], p2.y[1], p2.lambda);
  CHECK(near(twopoint_case2(2, 2, p2, Backend::Formula), expect));
  CHECK(near(twopoint_case2(2, 2, p2, Backend::Oracle), expect));
}

TEST_CASE("two-point case 3: opposite boundaries") {
  const ModelParams p = params4();
  CHECK(near(twopoint_case3(3, 1, p), Complex{0.08026319908493917, 0.0},
             5e-12));
  const ModelParams p3 = params3();
  for (int r1 = 1; r1 <= 3; ++r1)
    for (int r2 = 1; r2 <= 3; ++r2) {
      if (r1 == r2) continue;
      CHECK(dev(twopoint_case3(r1, r2, p3, Backend::Formula),
                twopoint_case3(r1, r2, p3, Backend::Oracle)) <= 1e-8);
    }
  CHECK_THROWS_AS(twopoint_case3(2, 2, p), InvalidOrder);
}

TEST_CASE("two-point case 4: both inversions in one row") {
  const ModelParams p = params4();
  CHECK(near(twopoint_case4(3, p), Complex{0.32726297251708925, 0.0}, 5e-12));
  for (const ModelParams& q : {params3(), params4()}) {
    const int n = static_cast<int>(q.x.size());
    for (int i = 2; i <= n; ++i)
      CHECK(dev(twopoint_case4(i, q, Backend::Formula),
                twopoint_case4(i, q, Backend::Oracle)) <= 1e-8);
  }

  // The chain terminates on a row-1 object with no configurations at all.
  const ModelParams sub = twopoint_sub_params(TwoPointSpec{4, 4, 2, 0, 0}, p);
  const Complex base = brute_partition(
      make_boundary(4, 2, {{Side::Right, 1}, {Side::Left, 1}}), sub);
  CHECK(std::abs(base) == 0.0);

  CHECK_THROWS_AS(twopoint_case4(1, p), IndexOutOfRange);
  CHECK_THROWS_AS(twopoint_case4(5, p), IndexOutOfRange);
}

TEST_CASE("two-point dispatcher") {
  const ModelParams p = params4();
  TwoPointSpec spec{1, 4, 1, 3, 0};
  CHECK(near(twopoint(spec, p), twopoint_case1(1, 3, p)));
  spec = {2, 4, 3, 0, 2};
  CHECK(near(twopoint(spec, p), twopoint_case2(3, 2, p)));
  spec = {3, 4, 3, 1, 0};
  CHECK(near(twopoint(spec, p), twopoint_case3(3, 1, p)));
  spec = {4, 4, 3, 0, 0};
  CHECK(near(twopoint(spec, p), twopoint_case4(3, p)));

  spec = {5, 4, 1, 2, 0};
  CHECK_THROWS_AS(twopoint(spec, p), ValidationError);
  spec = {1, 3, 1, 2, 0};
  CHECK_THROWS_AS(twopoint(spec, p), DimensionMismatch);
}
