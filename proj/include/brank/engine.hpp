// Recursive matrix multiplication driven by a verified bilinear algorithm,
// plus structural operation counting. Counts depend only on the algorithm's
// coefficient pattern and the recursion shape, never on matrix data, so the
// tally from an actual run must agree with the closed-form prediction and
// either one can feed an exponent fit.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "brank/decomposition.hpp"
#include "brank/errors.hpp"
#include "brank/json_io.hpp"
#include "brank/matrix.hpp"
#include "brank/rational.hpp"
#include "brank/tensor.hpp"

namespace brank {

struct OpCount {
  unsigned long long scalar_mults = 0;  // base products plus non-unit coefficient scalings
  unsigned long long scalar_adds = 0;   // accumulations in both linear-combination stages
  int recursion_depth = 0;              // levels of block recursion before the base case
  int base_l = 0, base_m = 0, base_n = 0;  // dims handed to the classical base multiply

  bool operator==(const OpCount& o) const = default;
};

inline Json op_count_to_json(const OpCount& ops) {
  return Json{{"scalar_mults", ops.scalar_mults},
              {"scalar_adds", ops.scalar_adds},
              {"recursion_depth", ops.recursion_depth},
              {"base_dims", Json::array({ops.base_l, ops.base_m, ops.base_n})}};
}

// True when d is an exact bilinear algorithm for the l x m x n matrix
// product; a decomposition of the wrong shape is simply not one.
inline bool check_bilinear_algorithm(const BilinearDecomposition& d, int l, int m, int n) {
  if (d.mode != BilinearDecomposition::Mode::exact)
    throw BadInput("check_bilinear_algorithm: needs an exact decomposition");
  if (d.a != l * m || d.b != m * n || d.c != n * l) return false;
  return verify_decomposition(make_matmul(l, m, n), d).exact_ok;
}

namespace detail {

template <class T>
T coeff_as(const Rat& q) {
  return T(q);
}
template <>
inline double coeff_as<double>(const Rat& q) {
  return rat_double(q);
}

inline bool is_unit(const Rat& q) { return q == 1 || q == -1; }

// Per-entry cost of one linear combination with these coefficients.
struct ComboCost {
  unsigned long long adds = 0;   // accumulated terms beyond the first
  unsigned long long mults = 0;  // coefficients other than 0 and +-1
};

inline ComboCost combo_cost(const std::vector<Rat>& coeffs) {
  ComboCost cost;
  unsigned long long nnz = 0;
  for (const Rat& q : coeffs) {
    if (q == 0) continue;
    ++nnz;
    if (!is_unit(q)) ++cost.mults;
  }
  if (nnz > 1) cost.adds = nnz - 1;
  return cost;
}

// Decide whether a (p, q, s) product recurses under this algorithm.
inline bool recursion_applies(int p, int q, int s, int l, int m, int n, int cutoff) {
  if (p <= cutoff || q <= cutoff || s <= cutoff) return false;
  return p % l == 0 && q % m == 0 && s % n == 0;
}

template <class T>
Mat<T> rec_mul(const Mat<T>& x, const Mat<T>& y, const BilinearDecomposition& d, int l, int m,
               int n, int cutoff, OpCount& ops, int depth) {
  const int p = x.rows(), q = x.cols(), s = y.cols();
  if (!recursion_applies(p, q, s, l, m, n, cutoff)) {
    if (ops.base_l == 0) {
      ops.base_l = p;
      ops.base_m = q;
      ops.base_n = s;
      ops.recursion_depth = depth;
    }
    Mat<T> z(p, s);
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < s; ++k) {
        T acc{};
        for (int j = 0; j < q; ++j) acc = acc + x(i, j) * y(j, k);
        z(i, k) = acc;
      }
    ops.scalar_mults += static_cast<unsigned long long>(p) * q * s;
    ops.scalar_adds += static_cast<unsigned long long>(p) * s * (q - 1);
    return z;
  }

  const int bp = p / l, bq = q / m, bs = s / n;
  auto x_block = [&](int i, int j) { return x.block(i * bp, j * bq, bp, bq); };
  auto y_block = [&](int i, int j) { return y.block(i * bq, j * bs, bq, bs); };

  // Linear combination of blocks; tallies one add per accumulated entry and
  // one mult per non-unit coefficient application.
  auto combine = [&ops](auto&& block_at, const std::vector<Rat>& coeffs, int rows, int cols,
                        int grid_cols) {
    Mat<T> acc(rows, cols);
    bool first = true;
    for (int idx = 0; idx < static_cast<int>(coeffs.size()); ++idx) {
      const Rat& cf = coeffs[static_cast<size_t>(idx)];
      if (cf == 0) continue;
      Mat<T> blk = block_at(idx / grid_cols, idx % grid_cols);
      T scale = coeff_as<T>(cf);
      bool unit = is_unit(cf);
      if (!unit) ops.scalar_mults += static_cast<unsigned long long>(rows) * cols;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          T term = unit ? (cf == 1 ? blk(i, j) : T{} - blk(i, j)) : scale * blk(i, j);
          acc(i, j) = first ? term : acc(i, j) + term;
        }
      if (!first) ops.scalar_adds += static_cast<unsigned long long>(rows) * cols;
      first = false;
    }
    return acc;
  };

  std::vector<Mat<T>> products;
  products.reserve(static_cast<size_t>(d.r));
  for (int j = 0; j < d.r; ++j) {
    Mat<T> xu = combine(x_block, d.u[static_cast<size_t>(j)], bp, bq, m);
    Mat<T> yv = combine(y_block, d.v[static_cast<size_t>(j)], bq, bs, n);
    products.push_back(rec_mul(xu, yv, d, l, m, n, cutoff, ops, depth + 1));
  }

  Mat<T> z(p, s);
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < l; ++u) {
      int slot = w * l + u;
      Mat<T> acc(bp, bs);
      bool first = true;
      for (int j = 0; j < d.r; ++j) {
        const Rat& cf = d.w[static_cast<size_t>(j)][static_cast<size_t>(slot)];
        if (cf == 0) continue;
        T scale = coeff_as<T>(cf);
        bool unit = is_unit(cf);
        if (!unit) ops.scalar_mults += static_cast<unsigned long long>(bp) * bs;
        for (int i = 0; i < bp; ++i)
          for (int k = 0; k < bs; ++k) {
            T term = unit ? (cf == 1 ? products[static_cast<size_t>(j)](i, k)
                                     : T{} - products[static_cast<size_t>(j)](i, k))
                          : scale * products[static_cast<size_t>(j)](i, k);
            acc(i, k) = first ? term : acc(i, k) + term;
          }
        if (!first) ops.scalar_adds += static_cast<unsigned long long>(bp) * bs;
        first = false;
      }
      z.set_block(u * bp, w * bs, acc);
    }
  return z;
}

inline void check_algorithm_shape(const BilinearDecomposition& d, int l, int m, int n) {
  if (l < 1 || m < 1 || n < 1) throw BadInput("recursive engine: dims must be positive");
  if (d.mode != BilinearDecomposition::Mode::exact)
    throw BadInput("recursive engine: needs an exact decomposition");
  if (d.a != l * m || d.b != m * n || d.c != n * l)
    throw DimensionMismatch("recursive engine: decomposition does not fit an " +
                            std::to_string(l) + "x" + std::to_string(m) + "x" +
                            std::to_string(n) + " product");
}

// Smallest power of base covering dim (power stays 1 when dim <= 1).
inline int covering_power(int dim, int base, const char* which) {
  if (dim <= 1) return 1;
  if (base == 1)
    throw BadInput(std::string("recursive engine: base 1 cannot reduce the ") + which +
                   " dimension");
  long long pw = 1;
  while (pw < dim) {
    pw *= base;
    if (pw > (1 << 26)) throw ResourceBudget("recursive engine: padded size exceeds 2^26");
  }
  return static_cast<int>(pw);
}

}  // namespace detail

// Multiplies x (p x q) by y (q x s) by recursive application of the bilinear
// algorithm d for the l x m x n block product, zero-padding each dimension up
// to the covering power of its base. ops (optional) receives the tally.
template <class T>
Mat<T> recursive_multiply(const Mat<T>& x, const Mat<T>& y, const BilinearDecomposition& d,
                          int l, int m, int n, int cutoff = 1, OpCount* ops = nullptr) {
  detail::check_algorithm_shape(d, l, m, n);
  if (x.cols() != y.rows())
    throw DimensionMismatch("recursive_multiply: inner dimensions disagree");
  if (cutoff < 1) throw BadInput("recursive_multiply: cutoff must be >= 1");
  const int p = x.rows(), q = x.cols(), s = y.cols();
  if (p < 1 || q < 1 || s < 1) throw BadInput("recursive_multiply: empty matrix");

  // Pad all three dims to one common depth so the recursion divides evenly.
  int pp = detail::covering_power(p, l, "row");
  int qq = detail::covering_power(q, m, "inner");
  int ss = detail::covering_power(s, n, "column");
  auto depth_of = [](int padded, int base) {
    int k = 0;
    for (long long pw = 1; pw < padded; pw *= base) ++k;
    return k;
  };
  int k = std::max({l > 1 ? depth_of(pp, l) : 0, m > 1 ? depth_of(qq, m) : 0,
                    n > 1 ? depth_of(ss, n) : 0});
  auto power_to = [](int base, int k) {
    long long pw = 1;
    for (int i = 0; i < k; ++i) {
      pw *= base;
      if (pw > (1 << 26)) throw ResourceBudget("recursive engine: padded size exceeds 2^26");
    }
    return static_cast<int>(pw);
  };
  pp = power_to(l, k);
  qq = power_to(m, k);
  ss = power_to(n, k);

  Mat<T> xp(pp, qq), yp(qq, ss);
  xp.set_block(0, 0, x);
  yp.set_block(0, 0, y);

  OpCount local;
  Mat<T> zp = detail::rec_mul(xp, yp, d, l, m, n, cutoff, local, 0);
  if (ops) *ops = local;
  return zp.block(0, 0, p, s);
}

// Closed-form operation count for multiplying (l^levels) x (m^levels) by
// (m^levels) x (n^levels) under d with the given cutoff. Matches the tally
// of recursive_multiply on exact-power inputs.
inline OpCount count_operations(const BilinearDecomposition& d, int l, int m, int n, int levels,
                                int cutoff = 1) {
  detail::check_algorithm_shape(d, l, m, n);
  if (levels < 0) throw BadInput("count_operations: levels must be >= 0");
  if (cutoff < 1) throw BadInput("count_operations: cutoff must be >= 1");

  detail::ComboCost u_cost, v_cost;
  for (int j = 0; j < d.r; ++j) {
    detail::ComboCost cu = detail::combo_cost(d.u[static_cast<size_t>(j)]);
    detail::ComboCost cv = detail::combo_cost(d.v[static_cast<size_t>(j)]);
    u_cost.adds += cu.adds;
    u_cost.mults += cu.mults;
    v_cost.adds += cv.adds;
    v_cost.mults += cv.mults;
  }
  detail::ComboCost w_cost;
  for (int slot = 0; slot < d.c; ++slot) {
    unsigned long long nnz = 0;
    for (int j = 0; j < d.r; ++j) {
      const Rat& cf = d.w[static_cast<size_t>(j)][static_cast<size_t>(slot)];
      if (cf == 0) continue;
      ++nnz;
      if (!detail::is_unit(cf)) ++w_cost.mults;
    }
    if (nnz > 1) w_cost.adds += nnz - 1;
  }

  auto pw = [](int base, int k) {
    unsigned long long v = 1;
    for (int i = 0; i < k; ++i) v *= static_cast<unsigned long long>(base);
    return v;
  };

  OpCount ops;
  // Find the level where recursion stops.
  int base_level = levels;
  while (base_level > 0 &&
         detail::recursion_applies(static_cast<int>(pw(l, base_level)),
                                   static_cast<int>(pw(m, base_level)),
                                   static_cast<int>(pw(n, base_level)), l, m, n, cutoff))
    --base_level;
  ops.recursion_depth = levels - base_level;
  ops.base_l = static_cast<int>(pw(l, base_level));
  ops.base_m = static_cast<int>(pw(m, base_level));
  ops.base_n = static_cast<int>(pw(n, base_level));

  // Classical base cost, then wrap one recursion level at a time.
  unsigned long long mults = pw(l, base_level) * pw(m, base_level) * pw(n, base_level);
  unsigned long long adds =
      pw(l, base_level) * pw(n, base_level) * (pw(m, base_level) - 1);
  for (int j = base_level + 1; j <= levels; ++j) {
    unsigned long long bu = pw(l, j - 1) * pw(m, j - 1);  // entries per U-stage block
    unsigned long long bv = pw(m, j - 1) * pw(n, j - 1);
    unsigned long long bw = pw(l, j - 1) * pw(n, j - 1);
    unsigned long long level_adds = u_cost.adds * bu + v_cost.adds * bv + w_cost.adds * bw;
    unsigned long long level_mults = u_cost.mults * bu + v_cost.mults * bv + w_cost.mults * bw;
    mults = static_cast<unsigned long long>(d.r) * mults + level_mults;
    adds = static_cast<unsigned long long>(d.r) * adds + level_adds;
  }
  ops.scalar_mults = mults;
  ops.scalar_adds = adds;
  return ops;
}

// ---------------------------------------------------------------------------
// Exponent telemetry

struct LadderRung {
  int level = 0;
  double size = 0.0;  // geometric mean of the three matrix dimensions
  OpCount ops;
};

struct ExponentFit {
  double exponent = 0.0;       // slope of log(mults) against log(size)
  double log_constant = 0.0;   // intercept
  int points = 0;
};

inline ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& size_mults) {
  if (size_mults.size() < 2) throw BadInput("fit_exponent: needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [size, mults] : size_mults) {
    if (size <= 0 || mults <= 0) throw BadInput("fit_exponent: sizes and counts must be positive");
    double x = std::log(size), y = std::log(mults);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(size_mults.size());
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw BadInput("fit_exponent: all sizes identical");
  ExponentFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.log_constant = (sy - fit.exponent * sx) / n;
  fit.points = static_cast<int>(size_mults.size());
  return fit;
}

inline std::vector<LadderRung> exponent_ladder(const BilinearDecomposition& d, int l, int m,
                                               int n, int max_level, int cutoff = 1) {
  if (max_level < 1) throw BadInput("exponent_ladder: max_level must be >= 1");
  std::vector<LadderRung> rungs;
  for (int k = 1; k <= max_level; ++k) {
    LadderRung rung;
    rung.level = k;
    rung.size = std::pow(static_cast<double>(l) * m * n, k / 3.0);
    rung.ops = count_operations(d, l, m, n, k, cutoff);
    rungs.push_back(rung);
  }
  return rungs;
}

inline ExponentFit ladder_fit(const std::vector<LadderRung>& rungs) {
  std::vector<std::pair<double, double>> pts;
  for (const LadderRung& r : rungs)
    pts.emplace_back(r.size, static_cast<double>(r.ops.scalar_mults));
  return fit_exponent(pts);
}

inline Json ladder_to_json(const std::vector<LadderRung>& rungs, const ExponentFit& fit) {
  Json arr = Json::array();
  for (const LadderRung& r : rungs)
    arr.push_back(Json{{"level", r.level}, {"size", r.size}, {"ops", op_count_to_json(r.ops)}});
  return Json{{"rungs", std::move(arr)},
              {"exponent", fit.exponent},
              {"log_constant", fit.log_constant},
              {"points", fit.points}};
}

}  // namespace brank
