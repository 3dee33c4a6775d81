#pragma once

// Order-3 tensors over exact rationals: the zoo of structure tensors,
// flattenings and multilinear ranks, conciseness and 1-genericity, and the
// restriction / Kronecker / direct-sum combinators.
//
// Index conventions (all fixed, all row-major, 0-based internally, 1-based in
// JSON): a matmul a-index enumerates (u,v) in [l]x[m] as u*m+v, the b-index
// (v,w) as v*n+w, the c-index (w,u) as w*l+u. Kronecker pairing maps (i1,i2)
// to i1*a2+i2 per factor. Flattenings: T_A maps A* to B(x)C with rows indexed
// by (j,k) as j*c+k; T_B rows are (k,i) as k*a+i; T_C rows are (i,j) as i*b+j.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "brank/errors.hpp"
#include "brank/matrix.hpp"
#include "brank/prng.hpp"
#include "brank/qpoly.hpp"
#include "brank/rational.hpp"

namespace brank {

enum class Factor { A, B, C };

inline const char* factor_name(Factor f) {
  switch (f) {
    case Factor::A: return "A";
    case Factor::B: return "B";
    default: return "C";
  }
}

struct Tensor3 {
  int a = 0, b = 0, c = 0;
  std::vector<Rat> e;  // dense, index (i*b + j)*c + k

  Tensor3() = default;
  Tensor3(int a_, int b_, int c_) : a(a_), b(b_), c(c_) {
    if (a_ < 1 || b_ < 1 || c_ < 1) throw BadInput("tensor dims must be positive");
    e.assign(static_cast<size_t>(a_) * b_ * c_, Rat(0));
  }

  Rat& at(int i, int j, int k) { return e[(static_cast<size_t>(i) * b + j) * c + k]; }
  const Rat& at(int i, int j, int k) const { return e[(static_cast<size_t>(i) * b + j) * c + k]; }

  bool operator==(const Tensor3& o) const { return a == o.a && b == o.b && c == o.c && e == o.e; }
  bool operator!=(const Tensor3& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Rat& x : e)
      if (x != 0) return false;
    return true;
  }

  int dim(Factor f) const { return f == Factor::A ? a : (f == Factor::B ? b : c); }

  size_t nnz() const {
    size_t n = 0;
    for (const Rat& x : e)
      if (x != 0) ++n;
    return n;
  }
};

struct FactorMapTriple {
  QMat gA, gB, gC;

  static FactorMapTriple identity(int a, int b, int c) {
    return {QMat::identity(a), QMat::identity(b), QMat::identity(c)};
  }
};

// ---------------------------------------------------------------------------
// Zoo constructors

inline Tensor3 make_unit(int r) {
  if (r < 1) throw BadInput("make_unit: r must be >= 1");
  Tensor3 t(r, r, r);
  for (int i = 0; i < r; ++i) t.at(i, i, i) = 1;
  return t;
}

// Structure tensor of (X,Y,Z) -> trace(XYZ) for X: l x m, Y: m x n, Z: n x l.
inline Tensor3 make_matmul(int l, int m, int n) {
  if (l < 1 || m < 1 || n < 1) throw BadInput("make_matmul: dims must be >= 1");
  Tensor3 t(l * m, m * n, n * l);
  for (int u = 0; u < l; ++u)
    for (int v = 0; v < m; ++v)
      for (int w = 0; w < n; ++w) t.at(u * m + v, v * n + w, w * l + u) = 1;
  return t;
}

// Little Coppersmith-Winograd tensor cw_q, dims (q+1)^3.
inline Tensor3 make_cw_little(int q) {
  if (q < 1) throw BadInput("make_cw_little: q must be >= 1");
  Tensor3 t(q + 1, q + 1, q + 1);
  for (int r = 1; r <= q; ++r) {
    t.at(0, r, r) += 1;
    t.at(r, 0, r) += 1;
    t.at(r, r, 0) += 1;
  }
  return t;
}

enum class FormKind { symmetric, skew, mixed };

// Nondegenerate bilinear forms used by the skeletal/little-CW families.
// skew: standard symplectic pairing (s, s+q/2). mixed: skew part plus a
// rank-one symmetric term on the last coordinate (disjoint for odd q).
inline QMat make_form(int q, FormKind kind) {
  if (q < 1) throw BadInput("make_form: q must be >= 1");
  switch (kind) {
    case FormKind::symmetric:
      return QMat::identity(q);
    case FormKind::skew: {
      if (q % 2 != 0) throw DegenerateForm("no nondegenerate skew form in odd dimension " + std::to_string(q));
      QMat b(q, q);
      for (int s = 0; s < q / 2; ++s) {
        b(s, s + q / 2) = 1;
        b(s + q / 2, s) = -1;
      }
      return b;
    }
    case FormKind::mixed: {
      if (q == 1) return QMat::identity(1);
      QMat b(q, q);
      const int h = (q % 2 == 0) ? q / 2 : (q - 1) / 2;
      const int span = (q % 2 == 0) ? q : q - 1;
      for (int s = 0; s < span / 2; ++s) {
        b(s, s + h) = 1;
        b(s + h, s) = -1;
      }
      b(q - 1, q - 1) += 1;
      return b;
    }
  }
  throw BadInput("make_form: unknown kind");
}

// Skeletal tensor S_B, dims (m,m,m) with m = q+2 for a nondegenerate q x q
// form B: corner terms a1 b1 cm + a1 bm c1 + am b1 c1, the cw-style terms
// a1 br cr + ar b1 cr for r = 2..m-1, and B placed against c1.
inline Tensor3 make_skeletal(const QMat& B) {
  if (B.rows() != B.cols() || B.rows() < 1) throw BadInput("make_skeletal: B must be square, size >= 1");
  const int q = B.rows();
  if (rank_exact(B) != q) throw DegenerateForm("make_skeletal: B is singular");
  const int m = q + 2;
  Tensor3 t(m, m, m);
  t.at(0, 0, m - 1) += 1;
  t.at(0, m - 1, 0) += 1;
  t.at(m - 1, 0, 0) += 1;
  for (int r = 1; r <= q; ++r) {
    t.at(0, r, r) += 1;
    t.at(r, 0, r) += 1;
  }
  for (int x = 1; x <= q; ++x)
    for (int y = 1; y <= q; ++y)
      if (B(x - 1, y - 1) != 0) t.at(x, y, 0) += B(x - 1, y - 1);
  return t;
}

inline Tensor3 make_skeletal(int m, FormKind kind) {
  if (m < 3) throw BadInput("make_skeletal: m must be >= 3");
  return make_skeletal(make_form(m - 2, kind));
}

// Little-CW variant T_{B-cw,q}: the cw_q pattern with its symmetric form
// replaced by the requested q x q form B.
inline Tensor3 make_cw_variant(int q, FormKind kind) {
  QMat B = make_form(q, kind);
  Tensor3 t(q + 1, q + 1, q + 1);
  for (int r = 1; r <= q; ++r) {
    t.at(0, r, r) += 1;
    t.at(r, 0, r) += 1;
  }
  for (int x = 1; x <= q; ++x)
    for (int y = 1; y <= q; ++y)
      if (B(x - 1, y - 1) != 0) t.at(x, y, 0) += B(x - 1, y - 1);
  return t;
}

// ---------------------------------------------------------------------------
// Combinators

inline Tensor3 apply(const FactorMapTriple& g, const Tensor3& t) {
  if (g.gA.cols() != t.a || g.gB.cols() != t.b || g.gC.cols() != t.c)
    throw DimensionMismatch("apply: map domain dims do not match tensor dims");
  const int a2 = g.gA.rows(), b2 = g.gB.rows(), c2 = g.gC.rows();
  // Contract one factor at a time.
  Tensor3 u(a2, t.b, t.c);
  for (int i2 = 0; i2 < a2; ++i2)
    for (int i = 0; i < t.a; ++i) {
      const Rat& w = g.gA(i2, i);
      if (w == 0) continue;
      for (int j = 0; j < t.b; ++j)
        for (int k = 0; k < t.c; ++k) {
          const Rat& x = t.at(i, j, k);
          if (x != 0) u.at(i2, j, k) += w * x;
        }
    }
  Tensor3 v(a2, b2, t.c);
  for (int j2 = 0; j2 < b2; ++j2)
    for (int j = 0; j < t.b; ++j) {
      const Rat& w = g.gB(j2, j);
      if (w == 0) continue;
      for (int i = 0; i < a2; ++i)
        for (int k = 0; k < t.c; ++k) {
          const Rat& x = u.at(i, j, k);
          if (x != 0) v.at(i, j2, k) += w * x;
        }
    }
  Tensor3 out(a2, b2, c2);
  for (int k2 = 0; k2 < c2; ++k2)
    for (int k = 0; k < t.c; ++k) {
      const Rat& w = g.gC(k2, k);
      if (w == 0) continue;
      for (int i = 0; i < a2; ++i)
        for (int j = 0; j < b2; ++j) {
          const Rat& x = v.at(i, j, k);
          if (x != 0) out.at(i, j, k2) += w * x;
        }
    }
  return out;
}

inline Tensor3 direct_sum(const Tensor3& t, const Tensor3& s) {
  Tensor3 out(t.a + s.a, t.b + s.b, t.c + s.c);
  for (int i = 0; i < t.a; ++i)
    for (int j = 0; j < t.b; ++j)
      for (int k = 0; k < t.c; ++k) out.at(i, j, k) = t.at(i, j, k);
  for (int i = 0; i < s.a; ++i)
    for (int j = 0; j < s.b; ++j)
      for (int k = 0; k < s.c; ++k) out.at(t.a + i, t.b + j, t.c + k) = s.at(i, j, k);
  return out;
}

inline constexpr size_t kDefaultEntryBudget = 8'000'000;

inline Tensor3 kronecker(const Tensor3& t, const Tensor3& s, size_t entry_budget = kDefaultEntryBudget) {
  const size_t total = static_cast<size_t>(t.a) * s.a * t.b * s.b * t.c * s.c;
  if (total > entry_budget)
    throw ResourceBudget("kronecker: output would hold " + std::to_string(total) + " entries, budget " +
                         std::to_string(entry_budget));
  Tensor3 out(t.a * s.a, t.b * s.b, t.c * s.c);
  for (int i1 = 0; i1 < t.a; ++i1)
    for (int j1 = 0; j1 < t.b; ++j1)
      for (int k1 = 0; k1 < t.c; ++k1) {
        const Rat& x = t.at(i1, j1, k1);
        if (x == 0) continue;
        for (int i2 = 0; i2 < s.a; ++i2)
          for (int j2 = 0; j2 < s.b; ++j2)
            for (int k2 = 0; k2 < s.c; ++k2) {
              const Rat& y = s.at(i2, j2, k2);
              if (y != 0) out.at(i1 * s.a + i2, j1 * s.b + j2, k1 * s.c + k2) = x * y;
            }
      }
  return out;
}

inline Tensor3 kronecker_power(const Tensor3& t, int k, size_t entry_budget = kDefaultEntryBudget) {
  if (k < 1) throw BadInput("kronecker_power: k must be >= 1");
  Tensor3 acc = t;
  for (int i = 1; i < k; ++i) acc = kronecker(acc, t, entry_budget);
  return acc;
}

// Deletes the A-slot of 1-based pair index (2,2) from M<2,2,2>: the Bini
// tensor, dims (3,4,4).
inline Tensor3 make_bini() {
  Tensor3 m2 = make_matmul(2, 2, 2);
  QMat proj(3, 4);
  proj(0, 0) = 1;  // (1,1)
  proj(1, 1) = 1;  // (1,2)
  proj(2, 2) = 1;  // (2,1); slot (2,2) = index 3 dropped
  return apply({proj, QMat::identity(4), QMat::identity(4)}, m2);
}

// Cycles factors: result dims (b,c,a), entries R(j,k,i) = T(i,j,k).
inline Tensor3 factor_cycle(const Tensor3& t) {
  Tensor3 out(t.b, t.c, t.a);
  for (int i = 0; i < t.a; ++i)
    for (int j = 0; j < t.b; ++j)
      for (int k = 0; k < t.c; ++k) {
        const Rat& x = t.at(i, j, k);
        if (x != 0) out.at(j, k, i) = x;
      }
  return out;
}

// Rotates the requested factor into the A position (factor B -> dims (b,c,a)).
inline Tensor3 rotate_factor_first(const Tensor3& t, Factor f) {
  if (f == Factor::A) return t;
  if (f == Factor::B) return factor_cycle(t);
  return factor_cycle(factor_cycle(t));
}

// ---------------------------------------------------------------------------
// Flattenings and ranks

inline QMat flatten(const Tensor3& t, Factor f) {
  switch (f) {
    case Factor::A: {
      QMat m(t.b * t.c, t.a);
      for (int i = 0; i < t.a; ++i)
        for (int j = 0; j < t.b; ++j)
          for (int k = 0; k < t.c; ++k) {
            const Rat& x = t.at(i, j, k);
            if (x != 0) m(j * t.c + k, i) = x;
          }
      return m;
    }
    case Factor::B: {
      QMat m(t.c * t.a, t.b);
      for (int i = 0; i < t.a; ++i)
        for (int j = 0; j < t.b; ++j)
          for (int k = 0; k < t.c; ++k) {
            const Rat& x = t.at(i, j, k);
            if (x != 0) m(k * t.a + i, j) = x;
          }
      return m;
    }
    default: {
      QMat m(t.a * t.b, t.c);
      for (int i = 0; i < t.a; ++i)
        for (int j = 0; j < t.b; ++j)
          for (int k = 0; k < t.c; ++k) {
            const Rat& x = t.at(i, j, k);
            if (x != 0) m(i * t.b + j, k) = x;
          }
      return m;
    }
  }
}

// A-slice i as a b x c matrix (and cyclically for the other factors).
inline QMat slice(const Tensor3& t, Factor f, int idx) {
  if (idx < 0 || idx >= t.dim(f)) throw BadInput("slice index out of range");
  switch (f) {
    case Factor::A: {
      QMat m(t.b, t.c);
      for (int j = 0; j < t.b; ++j)
        for (int k = 0; k < t.c; ++k) m(j, k) = t.at(idx, j, k);
      return m;
    }
    case Factor::B: {
      QMat m(t.c, t.a);
      for (int k = 0; k < t.c; ++k)
        for (int i = 0; i < t.a; ++i) m(k, i) = t.at(i, idx, k);
      return m;
    }
    default: {
      QMat m(t.a, t.b);
      for (int i = 0; i < t.a; ++i)
        for (int j = 0; j < t.b; ++j) m(i, j) = t.at(i, j, idx);
      return m;
    }
  }
}

// T(alpha) for a covector on the chosen factor: the weighted sum of slices.
inline QMat contract(const Tensor3& t, Factor f, const std::vector<Rat>& covector) {
  if (static_cast<int>(covector.size()) != t.dim(f)) throw DimensionMismatch("contract: covector length");
  QMat acc = slice(t, f, 0);
  const Rat& w0 = covector[0];
  for (int i = 0; i < acc.rows(); ++i)
    for (int j = 0; j < acc.cols(); ++j) acc(i, j) *= w0;
  for (int s = 1; s < t.dim(f); ++s) {
    if (covector[static_cast<size_t>(s)] == 0) continue;
    QMat sl = slice(t, f, s);
    for (int i = 0; i < acc.rows(); ++i)
      for (int j = 0; j < acc.cols(); ++j)
        if (sl(i, j) != 0) acc(i, j) += covector[static_cast<size_t>(s)] * sl(i, j);
  }
  return acc;
}

struct MlRanks {
  int mlA = 0, mlB = 0, mlC = 0;
  bool operator==(const MlRanks& o) const = default;
};

inline MlRanks multilinear_ranks(const Tensor3& t) {
  return {rank_exact(flatten(t, Factor::A)), rank_exact(flatten(t, Factor::B)), rank_exact(flatten(t, Factor::C))};
}

inline bool is_concise(const Tensor3& t) {
  MlRanks r = multilinear_ranks(t);
  return r.mlA == t.a && r.mlB == t.b && r.mlC == t.c;
}

// ---------------------------------------------------------------------------
// 1-genericity

struct GenericityReport {
  bool one_generic = false;
  std::vector<Rat> witness;  // empty when one_generic is false
  int full_rank = 0;         // min of the two complementary dims
  int achieved = 0;          // best slice-pencil rank certified
  bool symbolic_used = false;
};

namespace detail {

// Fraction-free rank over Q[t] (field of fractions Q(t)).
inline int rank_bareiss_poly(Mat<QPoly> m) {
  const int r = m.rows(), c = m.cols();
  int rank = 0;
  QPoly prev(Rat(1));
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(rank, piv);
    for (int i = rank + 1; i < r; ++i) {
      for (int j = col + 1; j < c; ++j) {
        QPoly t = m(rank, col) * m(i, j) - m(i, col) * m(rank, j);
        m(i, j) = t.is_zero() ? QPoly() : QPoly::divexact(t, prev);
      }
      m(i, col) = QPoly();
    }
    prev = m(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Randomized rank probing with an exact symbolic fallback via Kronecker
// substitution: the slice pencil sum_i x_i S_i keeps every variable linear, so
// substituting x_i = t^{(full+1)^i} is injective on the monomials of any minor
// of size <= full, and the pencil's maximal rank equals the rank over Q(t).
inline GenericityReport is_1generic(const Tensor3& tensor, Factor f, std::uint64_t seed = 17, int trials = 24,
                                    long height = 10) {
  Tensor3 t = rotate_factor_first(tensor, f);
  GenericityReport rep;
  rep.full_rank = t.b < t.c ? t.b : t.c;

  auto try_covector = [&](const std::vector<Rat>& alpha) {
    int r = rank_exact(contract(t, Factor::A, alpha));
    if (r > rep.achieved) rep.achieved = r;
    if (r == rep.full_rank) {
      rep.one_generic = true;
      rep.witness = alpha;
      return true;
    }
    return false;
  };

  // Deterministic cheap shots: all-ones, then coordinate covectors.
  std::vector<Rat> ones(static_cast<size_t>(t.a), Rat(1));
  if (try_covector(ones)) return rep;
  for (int i = 0; i < t.a; ++i) {
    std::vector<Rat> ei(static_cast<size_t>(t.a), Rat(0));
    ei[static_cast<size_t>(i)] = 1;
    if (try_covector(ei)) return rep;
  }

  Prng rng(derive_seed(seed, 0x19e7));
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Rat> alpha(static_cast<size_t>(t.a));
    for (int i = 0; i < t.a; ++i) alpha[static_cast<size_t>(i)] = rat_of(rng.int_in(-height, height));
    if (try_covector(alpha)) return rep;
  }

  // Exact confirmation.
  rep.symbolic_used = true;
  const double dbase = static_cast<double>(rep.full_rank + 1);
  double degree_estimate = 1.0;
  for (int i = 1; i < t.a; ++i) degree_estimate *= dbase;
  if (degree_estimate * rep.full_rank > 5e5)
    throw ResourceBudget("is_1generic: symbolic fallback degree too large for dims; supply an explicit witness");
  Mat<QPoly> pencil(t.b, t.c);
  Int power(1);
  for (int i = 0; i < t.a; ++i) {
    for (int j = 0; j < t.b; ++j)
      for (int k = 0; k < t.c; ++k) {
        const Rat& x = t.at(i, j, k);
        if (x != 0) pencil(j, k) += QPoly::monomial(static_cast<int>(power.get_si()), x);
      }
    power *= (rep.full_rank + 1);
  }
  int exact_max = detail::rank_bareiss_poly(pencil);
  rep.achieved = exact_max;
  rep.one_generic = (exact_max == rep.full_rank);
  if (!rep.one_generic) return rep;

  // A witness exists over Q; escalate the random search until one appears.
  for (int round = 0;; ++round) {
    if (round > 10000) throw ResourceBudget("is_1generic: witness search failed to terminate");
    long h = height * (1 + round / 8);
    std::vector<Rat> alpha(static_cast<size_t>(t.a));
    for (int i = 0; i < t.a; ++i) alpha[static_cast<size_t>(i)] = rat_of(rng.int_in(-h, h));
    if (try_covector(alpha)) return rep;
  }
}

}  // namespace brank
