// Symmetry Lie algebras. The annihilator
//
//   g~_T = { (U,V,W) in gl(A) + gl(B) + gl(C) | L.T = 0 }
//
// is the exact nullspace of a linear system with one equation per tensor
// coordinate:
//
//   sum_i' U[i][i'] T(i',j,k) + sum_j' V[j][j'] T(i,j',k)
//                             + sum_k' W[k][k'] T(i,j,k') = 0.
//
// Unknowns are packed u-block then v-block then w-block, each row-major, so
// the system is (abc) x (a^2+b^2+c^2). Scalar triples (l,m,n)I with l+m+n=0
// always solve it; for concise tensors they are the whole scalar part, so
// dim g_T = dim g~_T - 2 there and is left undefined otherwise.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "brank/errors.hpp"
#include "brank/matrix.hpp"
#include "brank/tensor.hpp"

namespace brank {

struct SymmetryBasis {
  std::vector<FactorMapTriple> triples;
  int dim_tilde = 0;
  std::optional<int> dim_g;  // only for concise tensors
};

inline QMat killeqn_matrix(const Tensor3& t, long entry_budget = kDefaultEntryBudget) {
  const long rows = static_cast<long>(t.a) * t.b * t.c;
  const long cols = static_cast<long>(t.a) * t.a + static_cast<long>(t.b) * t.b +
                    static_cast<long>(t.c) * t.c;
  if (rows * cols > entry_budget)
    throw ResourceBudget("killeqn_matrix: system exceeds entry budget");
  const int ub = 0, vb = t.a * t.a, wb = t.a * t.a + t.b * t.b;
  QMat m(static_cast<int>(rows), static_cast<int>(cols));
  for (int p = 0; p < t.a; ++p)
    for (int q = 0; q < t.b; ++q)
      for (int r = 0; r < t.c; ++r) {
        const Rat& x = t.at(p, q, r);
        if (x == 0) continue;
        // d/dU[i][p] of equation (i,q,r), and likewise for V, W.
        for (int i = 0; i < t.a; ++i) m((i * t.b + q) * t.c + r, ub + i * t.a + p) += x;
        for (int j = 0; j < t.b; ++j) m((p * t.b + j) * t.c + r, vb + j * t.b + q) += x;
        for (int k = 0; k < t.c; ++k) m((p * t.b + q) * t.c + k, wb + k * t.c + r) += x;
      }
  return m;
}

namespace detail {

inline FactorMapTriple unpack_symmetry_vector(const QMat& n, int col, int a, int b, int c) {
  FactorMapTriple l{QMat(a, a), QMat(b, b), QMat(c, c)};
  int at = 0;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) l.gA(i, j) = n(at++, col);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) l.gB(i, j) = n(at++, col);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) l.gC(i, j) = n(at++, col);
  return l;
}

}  // namespace detail

inline SymmetryBasis symmetry_algebra(const Tensor3& t, long entry_budget = kDefaultEntryBudget) {
  if (t.is_zero()) throw ZeroTensor("symmetry_algebra: tensor is zero");
  QMat n = nullspace(killeqn_matrix(t, entry_budget));
  SymmetryBasis basis;
  basis.dim_tilde = n.cols();
  basis.triples.reserve(n.cols());
  for (int col = 0; col < n.cols(); ++col)
    basis.triples.push_back(detail::unpack_symmetry_vector(n, col, t.a, t.b, t.c));
  if (is_concise(t)) basis.dim_g = basis.dim_tilde - 2;
  return basis;
}

inline bool check_annihilates(const FactorMapTriple& l, const Tensor3& t) {
  if (l.gA.rows() != t.a || l.gA.cols() != t.a || l.gB.rows() != t.b || l.gB.cols() != t.b ||
      l.gC.rows() != t.c || l.gC.cols() != t.c)
    throw DimensionMismatch("check_annihilates: triple dims do not match tensor");
  for (int i = 0; i < t.a; ++i)
    for (int j = 0; j < t.b; ++j)
      for (int k = 0; k < t.c; ++k) {
        Rat residual;
        for (int x = 0; x < t.a; ++x) residual += l.gA(i, x) * t.at(x, j, k);
        for (int x = 0; x < t.b; ++x) residual += l.gB(j, x) * t.at(i, x, k);
        for (int x = 0; x < t.c; ++x) residual += l.gC(k, x) * t.at(i, j, x);
        if (residual != 0) return false;
      }
  return true;
}

// Componentwise bracket ([U,U'],[V,V'],[W,W']); the annihilator is closed
// under it.
inline FactorMapTriple bracket(const FactorMapTriple& x, const FactorMapTriple& y) {
  return {x.gA * y.gA - y.gA * x.gA, x.gB * y.gB - y.gB * x.gB, x.gC * y.gC - y.gC * x.gC};
}

// ---------------------------------------------------------------------------
// Skeletal block report

// Dimensions of g~_{S_B} projected onto the named parameter blocks of the
// paper-normal-form for skeletal tensors: scalar corners (u11, u1m, v1m),
// first-row vectors (u_bar, v_bar, z_bar), and the form-preserving part X,
// measured as the subalgebra supported entirely on the middle blocks.
struct SkeletalReport {
  SymmetryBasis basis;
  int m = 0;
  QMat form;               // the q x q form recovered from the tensor
  bool template_zeros_ok;  // basis vanishes under the corner columns/rows
  int x_dim = 0;           // middle-block subalgebra, = dim h_B
  int u_bar_dim = 0, v_bar_dim = 0, z_bar_dim = 0;
  int corner_dim = 0;  // span of the six corner diagonal entries
};

namespace detail {

// dim of the image of span(columns of n) projected onto coordinate set
// `coords`, and dim of the kernel of that projection.
inline int projected_dim(const QMat& n, const std::vector<int>& coords) {
  QMat sub(static_cast<int>(coords.size()), n.cols());
  for (size_t r = 0; r < coords.size(); ++r)
    for (int c = 0; c < n.cols(); ++c) sub(static_cast<int>(r), c) = n(coords[r], c);
  return rank_exact(sub);
}

}  // namespace detail

inline SkeletalReport structured_basis_report(const Tensor3& t) {
  if (t.a != t.b || t.a != t.c || t.a < 3)
    throw TemplateMismatch("structured_basis_report: tensor is not a cube of size >= 3");
  const int m = t.a, q = m - 2;
  // Recover the form and insist the support matches make_skeletal exactly.
  QMat form(q, q);
  for (int x = 1; x <= q; ++x)
    for (int y = 1; y <= q; ++y) form(x - 1, y - 1) = t.at(x, y, 0);
  Tensor3 expected(m, m, m);
  expected.at(0, 0, m - 1) = 1;
  expected.at(0, m - 1, 0) = 1;
  expected.at(m - 1, 0, 0) = 1;
  for (int r = 1; r <= q; ++r) {
    expected.at(0, r, r) = 1;
    expected.at(r, 0, r) = 1;
  }
  for (int x = 1; x <= q; ++x)
    for (int y = 1; y <= q; ++y) expected.at(x, y, 0) = form(x - 1, y - 1);
  if (!(t == expected) || rank_exact(form) != q)
    throw TemplateMismatch("structured_basis_report: tensor is not skeletal-shaped");

  SkeletalReport report;
  report.m = m;
  report.form = form;
  report.basis = symmetry_algebra(t);

  // Rebuild the flat nullspace matrix from the basis triples.
  const int dim = report.basis.dim_tilde;
  const int total = 3 * m * m;
  QMat n(total, dim);
  for (int col = 0; col < dim; ++col) {
    const FactorMapTriple& l = report.basis.triples[col];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        n(i * m + j, col) = l.gA(i, j);
        n(m * m + i * m + j, col) = l.gB(i, j);
        n(2 * m * m + i * m + j, col) = l.gC(i, j);
      }
  }

  auto entry = [m](int factor, int i, int j) { return factor * m * m + i * m + j; };

  // The normal form is block upper triangular: first column below the corner
  // and last row left of the corner vanish in all three matrices.
  std::vector<int> forced_zero;
  for (int f = 0; f < 3; ++f) {
    for (int i = 1; i < m; ++i) forced_zero.push_back(entry(f, i, 0));
    for (int j = 0; j < m - 1; ++j) forced_zero.push_back(entry(f, m - 1, j));
  }
  report.template_zeros_ok = detail::projected_dim(n, forced_zero) == 0;

  // X block: part of the algebra supported on the middle q x q blocks only.
  std::vector<int> outside_middle;
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i == 0 || i == m - 1 || j == 0 || j == m - 1) outside_middle.push_back(entry(f, i, j));
  report.x_dim = dim - detail::projected_dim(n, outside_middle);

  auto row_vector_dim = [&](int factor) {
    std::vector<int> coords;
    for (int j = 1; j <= q; ++j) coords.push_back(entry(factor, 0, j));
    return detail::projected_dim(n, coords);
  };
  report.u_bar_dim = row_vector_dim(0);
  report.v_bar_dim = row_vector_dim(1);
  report.z_bar_dim = row_vector_dim(2);

  std::vector<int> corners;
  for (int f = 0; f < 3; ++f) {
    corners.push_back(entry(f, 0, 0));
    corners.push_back(entry(f, m - 1, m - 1));
  }
  report.corner_dim = detail::projected_dim(n, corners);
  return report;
}

}  // namespace brank
