#include "dwbc/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace dwbc {

namespace {

void require_square(const ModelParams& params) {
  if (params.x.size() != params.y.size())
    throw NonSquare("correlators need the full N x N parameter set");
}

void require_row(int r, int n, const char* what) {
  if (r < 1 || r > n) {
    std::ostringstream msg;
    msg << what << " = " << r << " outside 1.." << n;
    throw IndexOutOfRange(msg.str());
  }
}

// Everything below the public API runs on long double: the rolling sums
// cancel coefficient products of order 1e3 down to results of order 1e-3,
// which costs roughly half the double mantissa at unlucky draws.
ComplexL lift(const Complex& z) { return {z.real(), z.imag()}; }

std::vector<ComplexL> lift(const std::vector<Complex>& v) {
  std::vector<ComplexL> out;
  out.reserve(v.size());
  for (const Complex& z : v) out.push_back(lift(z));
  return out;
}

Complex lower(const ComplexL& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

ComplexL checked_b(const ComplexL& u, const ComplexL& v, const ComplexL& lam) {
  const ComplexL b = weight_b_l(u, v, lam);
  const long double scale =
      std::max(1.0L, std::abs(weight_c_l(u, v, lam)));
  if (std::abs(b) <= kDegeneracyThreshold * scale)
    throw DegenerateRapidities("coincident rapidities in a roll ratio");
  return b;
}

// f = a/b, g = c/b, g/f = c/a, all argument-order sensitive.
ComplexL f_of(const ComplexL& u, const ComplexL& v, const ComplexL& lam) {
  return weight_a_l(u, v, lam) / checked_b(u, v, lam);
}
ComplexL g_of(const ComplexL& u, const ComplexL& v, const ComplexL& lam) {
  return weight_c_l(u, v, lam) / checked_b(u, v, lam);
}
ComplexL gf_of(const ComplexL& u, const ComplexL& v, const ComplexL& lam) {
  const ComplexL a = weight_a_l(u, v, lam);
  const ComplexL c = weight_c_l(u, v, lam);
  if (std::abs(a) <= kDegeneracyThreshold * std::max(1.0L, std::abs(c)))
    throw DegenerateRapidities("vanishing a-weight in a roll ratio");
  return c / a;
}

// Closed right-boundary roll from row r: the term that bubbles rapidity
// v[al-1] to the boundary. The bubbled rapidity sits SECOND in every
// argument pair. `skip` (1-based, 0 = none) omits one row from the
// f-product; `lo` is the topmost participating row.
ComplexL right_coef(const std::vector<ComplexL>& v, const ComplexL& lam, int r,
                   int al, int lo, int skip) {
  ComplexL c = al == r
                  ? ComplexL{1.0L, 0.0L}
                  : gf_of(v[static_cast<std::size_t>(r) - 1],
                          v[static_cast<std::size_t>(al) - 1], lam);
  for (int i = lo; i <= r; ++i)
    if (i != al && i != skip)
      c *= f_of(v[static_cast<std::size_t>(i) - 1],
                v[static_cast<std::size_t>(al) - 1], lam);
  return c;
}

// Mirror image used on the left boundary: the bubbled rapidity sits FIRST.
ComplexL left_coef(const std::vector<ComplexL>& v, const ComplexL& lam, int r,
                  int al, int skip) {
  ComplexL c = al == r
                  ? ComplexL{1.0L, 0.0L}
                  : gf_of(v[static_cast<std::size_t>(al) - 1],
                          v[static_cast<std::size_t>(r) - 1], lam);
  for (int i = 1; i <= r; ++i)
    if (i != al && i != skip)
      c *= f_of(v[static_cast<std::size_t>(al) - 1],
                v[static_cast<std::size_t>(i) - 1], lam);
  return c;
}

// Column roll from column c leftward to column N (bubbled rapidity second,
// like the right roll, acting on the y list).
ComplexL col_coef(const std::vector<ComplexL>& v, const ComplexL& lam, int c,
                 int be, int skip) {
  const int n = static_cast<int>(v.size());
  ComplexL w = be == c
                  ? ComplexL{1.0L, 0.0L}
                  : gf_of(v[static_cast<std::size_t>(c) - 1],
                          v[static_cast<std::size_t>(be) - 1], lam);
  for (int j = c; j <= n; ++j)
    if (j != be && j != skip)
      w *= f_of(v[static_cast<std::size_t>(j) - 1],
                v[static_cast<std::size_t>(be) - 1], lam);
  return w;
}

// Determinant partition function of the sublattice keeping all rows except
// the 1-based positions in drop_rows (positions refer to the given row
// list, which may be a permuted assignment) and columns y_{keep_from}..y_N.
ComplexL reduced_z(const std::vector<ComplexL>& rows,
                  const std::vector<ComplexL>& ys, const ComplexL& lam,
                  std::initializer_list<int> drop_rows, int keep_from) {
  std::vector<ComplexL> sx, sy;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int pos = static_cast<int>(k) + 1;
    if (std::find(drop_rows.begin(), drop_rows.end(), pos) == drop_rows.end())
      sx.push_back(rows[k]);
  }
  for (std::size_t k = static_cast<std::size_t>(keep_from) - 1; k < ys.size();
       ++k)
    sy.push_back(ys[k]);
  return izergin_extended(lam, sx, sy);
}

ComplexL apeel(const std::vector<ComplexL>& rows, const std::vector<ComplexL>& ys,
              const ComplexL& lam, int al, int from_col, int skip_col = 0) {
  ComplexL w{1.0L, 0.0L};
  for (int j = from_col; j <= static_cast<int>(ys.size()); ++j)
    if (j != skip_col)
      w *= weight_a_l(rows[static_cast<std::size_t>(al) - 1],
                    ys[static_cast<std::size_t>(j) - 1], lam);
  return w;
}

ComplexL bpeel(const std::vector<ComplexL>& rows, const std::vector<ComplexL>& ys,
              const ComplexL& lam, int al, int from_col) {
  ComplexL w{1.0L, 0.0L};
  for (int j = from_col; j <= static_cast<int>(ys.size()); ++j)
    w *= weight_b_l(rows[static_cast<std::size_t>(al) - 1],
                  ys[static_cast<std::size_t>(j) - 1], lam);
  return w;
}

// Opposite-boundary two-point sum (right inversion r1, left inversion r2)
// with an explicit row-rapidity assignment. Two expansions, distinguished
// by which inversion sits higher: the higher arrow is rolled first.
ComplexL case3_closed(int r1, int r2, const std::vector<ComplexL>& rows,
                     const std::vector<ComplexL>& ys, const ComplexL& lam) {
  ComplexL tot{0.0L, 0.0L};
  if (r1 < r2) {
    for (int a1 = 1; a1 <= r1; ++a1) {
      const ComplexL c1 = right_coef(rows, lam, r1, a1, 1, 0);
      const ComplexL p1 = apeel(rows, ys, lam, a1, 3);
      for (int a2 = 1; a2 <= r2; ++a2) {
        if (a2 == a1) continue;
        const ComplexL c2 = left_coef(rows, lam, r2, a2, a1);
        const ComplexL p2 = bpeel(rows, ys, lam, a2, 3);
        tot += c1 * p1 * c2 * p2 * reduced_z(rows, ys, lam, {a1, a2}, 3);
      }
    }
  } else {
    for (int a2 = 1; a2 <= r2; ++a2) {
      const ComplexL c2 = left_coef(rows, lam, r2, a2, 0);
      const ComplexL p2 = bpeel(rows, ys, lam, a2, 3);
      for (int a1 = 1; a1 <= r1; ++a1) {
        if (a1 == a2) continue;
        const ComplexL c1 = right_coef(rows, lam, r1, a1, 1, a2);
        const ComplexL p1 = apeel(rows, ys, lam, a1, 3);
        tot += c2 * p2 * c1 * p1 * reduced_z(rows, ys, lam, {a1, a2}, 3);
      }
    }
  }
  return tot;
}

// Same-row two-point function with an explicit assignment. Linear chain in
// the row index: each step exchanges the two rows at the arrow and adds two
// mixed-boundary terms one row higher, evaluated by case3_closed.
ComplexL case4_closed(int i, std::vector<int> perm,
                     const std::vector<ComplexL>& xs,
                     const std::vector<ComplexL>& ys, const ComplexL& lam,
                     std::map<std::pair<int, std::vector<int>>, ComplexL>& memo) {
  if (i == 1) return {0.0L, 0.0L};
  const auto key = std::make_pair(i, perm);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;

  std::vector<ComplexL> rows(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k)
    rows[k] = xs[static_cast<std::size_t>(perm[k])];
  const ComplexL u = rows[static_cast<std::size_t>(i) - 2];
  const ComplexL v = rows[static_cast<std::size_t>(i) - 1];

  std::vector<int> swapped = perm;
  std::swap(swapped[static_cast<std::size_t>(i) - 2],
            swapped[static_cast<std::size_t>(i) - 1]);
  std::vector<ComplexL> rows_sw(rows);
  std::swap(rows_sw[static_cast<std::size_t>(i) - 2],
            rows_sw[static_cast<std::size_t>(i) - 1]);

  const ComplexL val =
      case4_closed(i - 1, swapped, xs, ys, lam, memo) +
      g_of(v, u, lam) * case3_closed(i - 1, i, rows, ys, lam) +
      g_of(u, v, lam) * case3_closed(i - 1, i, rows_sw, ys, lam);
  memo.emplace(key, val);
  return val;
}

}  // namespace

Complex right_column_weight(int r, const ModelParams& params) {
  const int n = static_cast<int>(params.x.size());
  if (params.y.empty())
    throw DimensionMismatch("need at least the rightmost column rapidity");
  require_row(r, n, "row r");
  const Complex y1 = params.y.front();
  Complex w{1.0, 0.0};
  for (int i = 1; i < r; ++i)
    w *= weight_b(params.x[static_cast<std::size_t>(i) - 1], y1, params.lambda);
  w *= weight_c(params.x[static_cast<std::size_t>(r) - 1], y1, params.lambda);
  for (int i = r + 1; i <= n; ++i)
    w *= weight_a(params.x[static_cast<std::size_t>(i) - 1], y1, params.lambda);
  return w;
}

BoundarySpec onepoint_left_boundary(int n, int r) {
  require_row(r, n, "row r");
  return make_boundary(n, n - 1, {{Side::Right, r}});
}

ModelParams left_part_params(const ModelParams& params) {
  if (params.y.empty())
    throw DimensionMismatch("cannot drop the rightmost column of nothing");
  ModelParams sub;
  sub.lambda = params.lambda;
  sub.x = params.x;
  sub.y.assign(params.y.begin() + 1, params.y.end());
  return sub;
}

BoundarySpec twopoint_boundary(const TwoPointSpec& spec) {
  const int n = spec.n;
  switch (spec.case_id) {
    case 1:
      require_row(spec.r1, n, "row r1");
      require_row(spec.r2, n, "row r2");
      if (spec.r1 >= spec.r2)
        throw InvalidOrder("case 1 needs r1 < r2");
      return make_boundary(n, n - 2,
                           {{Side::Right, spec.r1}, {Side::Right, spec.r2}});
    case 2:
      if (spec.r1 < 2 || spec.r1 > n)
        throw IndexOutOfRange("case 2 needs 2 <= r <= N");
      if (spec.col < 2 || spec.col > n)
        throw IndexOutOfRange("case 2 needs 2 <= c <= N");
      return make_boundary(
          n - 1, n - 1, {{Side::Right, spec.r1 - 1}, {Side::Top, spec.col - 1}});
    case 3:
      require_row(spec.r1, n, "row r1");
      require_row(spec.r2, n, "row r2");
      if (spec.r1 == spec.r2)
        throw InvalidOrder("case 3 needs r1 != r2 (case 4 covers r1 == r2)");
      return make_boundary(n, n - 2,
                           {{Side::Right, spec.r1}, {Side::Left, spec.r2}});
    case 4:
      require_row(spec.r1, n, "row r1");
      return make_boundary(n, n - 2,
                           {{Side::Right, spec.r1}, {Side::Left, spec.r1}});
    default:
      throw ValidationError("two-point case must be 1, 2, 3 or 4");
  }
}

ModelParams twopoint_sub_params(const TwoPointSpec& spec,
                                const ModelParams& params) {
  ModelParams sub;
  sub.lambda = params.lambda;
  if (spec.case_id == 2) {
    if (params.x.size() < 2 || params.y.size() < 2)
      throw DimensionMismatch("case 2 needs N >= 2");
    sub.x.assign(params.x.begin() + 1, params.x.end());
    sub.y.assign(params.y.begin() + 1, params.y.end());
  } else {
    if (params.y.size() < 2)
      throw DimensionMismatch("two-point sublattice needs N >= 2");
    sub.x = params.x;
    sub.y.assign(params.y.begin() + 2, params.y.end());
  }
  return sub;
}

Complex right_roll_coefficient(int r, int alpha, const ModelParams& params,
                               int lo, int skip) {
  const int n = static_cast<int>(params.x.size());
  require_row(r, n, "row r");
  require_row(alpha, r, "term alpha");
  return lower(
      right_coef(lift(params.x), lift(params.lambda), r, alpha, lo, skip));
}

Complex left_roll_coefficient(int r, int alpha, const ModelParams& params,
                              int skip) {
  const int n = static_cast<int>(params.x.size());
  require_row(r, n, "row r");
  require_row(alpha, r, "term alpha");
  return lower(left_coef(lift(params.x), lift(params.lambda), r, alpha, skip));
}

Complex column_roll_coefficient(int c, int beta, const ModelParams& params,
                                int skip) {
  const int n = static_cast<int>(params.y.size());
  require_row(c, n, "column c");
  if (beta < c || beta > n)
    throw IndexOutOfRange("column-roll term outside c..N");
  return lower(col_coef(lift(params.y), lift(params.lambda), c, beta, skip));
}

double roll_step_check(int i, const ModelParams& params, int cap) {
  require_square(params);
  const int n = static_cast<int>(params.x.size());
  if (i < 2 || i > n) throw IndexOutOfRange("roll step needs 2 <= i <= N");

  const ModelParams sub = left_part_params(params);
  ModelParams swapped = params;
  std::swap(swapped.x[static_cast<std::size_t>(i) - 2],
            swapped.x[static_cast<std::size_t>(i) - 1]);

  const Complex lhs =
      brute_partition(onepoint_left_boundary(n, i), sub, nullptr, cap);
  const Complex f_prev_swapped = brute_partition(
      onepoint_left_boundary(n, i - 1), left_part_params(swapped), nullptr, cap);
  const Complex f_prev =
      brute_partition(onepoint_left_boundary(n, i - 1), sub, nullptr, cap);

  const Complex rhs =
      roll_ratios(i - 1, i, params, RollAxis::Rows).f * f_prev_swapped +
      roll_ratios(i, i - 1, params, RollAxis::Rows).g * f_prev;
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

Complex left_onepoint(int r, const ModelParams& params, Backend backend,
                      int cap) {
  require_square(params);
  const int n = static_cast<int>(params.x.size());
  require_row(r, n, "row r");
  if (backend == Backend::Oracle)
    return brute_partition(onepoint_left_boundary(n, r),
                           left_part_params(params), nullptr, cap);
  const std::vector<ComplexL> xs = lift(params.x);
  const std::vector<ComplexL> ys = lift(params.y);
  const ComplexL lam = lift(params.lambda);
  ComplexL tot{0.0L, 0.0L};
  for (int al = 1; al <= r; ++al)
    tot += right_coef(xs, lam, r, al, 1, 0) * apeel(xs, ys, lam, al, 2) *
           reduced_z(xs, ys, lam, {al}, 2);
  return lower(tot);
}

Complex bpz_onepoint(int r, const ModelParams& params) {
  const Complex z = izergin_partition(params);
  if (std::abs(z) < 1e-250)
    throw ZeroPartition("partition function vanishes; ratio undefined");
  return right_column_weight(r, params) * left_onepoint(r, params) / z;
}

Complex twopoint_case1(int r1, int r2, const ModelParams& params,
                       Backend backend, int cap) {
  require_square(params);
  const int n = static_cast<int>(params.x.size());
  const TwoPointSpec spec{1, n, r1, r2, 0};
  if (backend == Backend::Oracle)
    return brute_partition(twopoint_boundary(spec),
                           twopoint_sub_params(spec, params), nullptr, cap);
  twopoint_boundary(spec);  // validates the positions
  const std::vector<ComplexL> xs = lift(params.x);
  const std::vector<ComplexL> ys = lift(params.y);
  const ComplexL lam = lift(params.lambda);
  ComplexL tot{0.0L, 0.0L};
  for (int a1 = 1; a1 <= r1; ++a1) {
    const ComplexL c1 = right_coef(xs, lam, r1, a1, 1, 0);
    const ComplexL p1 = apeel(xs, ys, lam, a1, 3);
    for (int a2 = 1; a2 <= r2; ++a2) {
      if (a2 == a1) continue;
      const ComplexL c2 = right_coef(xs, lam, r2, a2, 1, a1);
      const ComplexL p2 = apeel(xs, ys, lam, a2, 3);
      tot += c1 * p1 * c2 * p2 * reduced_z(xs, ys, lam, {a1, a2}, 3);
    }
  }
  return lower(tot);
}

Complex twopoint_case2(int r, int c, const ModelParams& params,
                       Backend backend, int cap) {
  require_square(params);
  const int n = static_cast<int>(params.x.size());
  const TwoPointSpec spec{2, n, r, 0, c};
  if (backend == Backend::Oracle)
    return brute_partition(twopoint_boundary(spec),
                           twopoint_sub_params(spec, params), nullptr, cap);
  twopoint_boundary(spec);
  const std::vector<ComplexL> xs = lift(params.x);
  const std::vector<ComplexL> ys = lift(params.y);
  const ComplexL lam = lift(params.lambda);
  ComplexL tot{0.0L, 0.0L};
  for (int al = 2; al <= r; ++al) {
    const ComplexL row_coef = right_coef(xs, lam, r, al, 2, 0);
    ComplexL inner{0.0L, 0.0L};
    for (int be = c; be <= n; ++be) {
      const ComplexL cc = col_coef(ys, lam, c, be, 0);
      const ComplexL pa = apeel(xs, ys, lam, al, 2, be);
      ComplexL pb{1.0L, 0.0L};
      for (int i = 2; i <= n; ++i)
        pb *= weight_b_l(xs[static_cast<std::size_t>(i) - 1],
                         ys[static_cast<std::size_t>(be) - 1], lam);
      std::vector<ComplexL> rx, ry;
      for (int k = 2; k <= n; ++k)
        if (k != al) rx.push_back(xs[static_cast<std::size_t>(k) - 1]);
      for (int k = 2; k <= n; ++k)
        if (k != be) ry.push_back(ys[static_cast<std::size_t>(k) - 1]);
      inner += cc * pa * pb * izergin_extended(lam, rx, ry);
    }
    tot += row_coef * inner;
  }
  return lower(tot);
}

Complex twopoint_case3(int r1, int r2, const ModelParams& params,
                       Backend backend, int cap) {
  require_square(params);
  const int n = static_cast<int>(params.x.size());
  const TwoPointSpec spec{3, n, r1, r2, 0};
  if (backend == Backend::Oracle)
    return brute_partition(twopoint_boundary(spec),
                           twopoint_sub_params(spec, params), nullptr, cap);
  twopoint_boundary(spec);
  return lower(case3_closed(r1, r2, lift(params.x), lift(params.y),
                            lift(params.lambda)));
}

Complex twopoint_case4(int i, const ModelParams& params, Backend backend,
                       int cap) {
  require_square(params);
  const int n = static_cast<int>(params.x.size());
  if (i < 2 || i > n)
    throw IndexOutOfRange("case 4 needs 2 <= i <= N");
  const TwoPointSpec spec{4, n, i, 0, 0};
  if (backend == Backend::Oracle)
    return brute_partition(twopoint_boundary(spec),
                           twopoint_sub_params(spec, params), nullptr, cap);
  std::vector<int> identity(params.x.size());
  std::iota(identity.begin(), identity.end(), 0);
  std::map<std::pair<int, std::vector<int>>, ComplexL> memo;
  return lower(case4_closed(i, std::move(identity), lift(params.x),
                            lift(params.y), lift(params.lambda), memo));
}

Complex twopoint(const TwoPointSpec& spec, const ModelParams& params,
                 Backend backend, int cap) {
  if (static_cast<int>(params.x.size()) != spec.n)
    throw DimensionMismatch("spec.n does not match the parameter set");
  switch (spec.case_id) {
    case 1: return twopoint_case1(spec.r1, spec.r2, params, backend, cap);
    case 2: return twopoint_case2(spec.r1, spec.col, params, backend, cap);
    case 3: return twopoint_case3(spec.r1, spec.r2, params, backend, cap);
    case 4: return twopoint_case4(spec.r1, params, backend, cap);
    default: throw ValidationError("two-point case must be 1, 2, 3 or 4");
  }
}

}  // namespace dwbc
