#pragma once

// Dense matrices over an exact scalar ring, plus the exact linear algebra the
// library is built on: fraction-free (Bareiss) rank, reduced row echelon form
// over the rationals, nullspace and inverse, Kronecker products, and a reduced
// row-span helper for repeated membership tests.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brank/rational.hpp"

namespace brank {

template <class T>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(int rows, int cols, const T& fill = T())
      : r_(rows), c_(cols), e_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dims");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  T& operator()(int i, int j) { return e_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * c_ + j]; }

  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < c_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat block(int i0, int j0, int h, int w) const {
    Mat b(h, w);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  void set_block(int i0, int j0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  std::vector<T> row(int i) const {
    std::vector<T> v(static_cast<size_t>(c_));
    for (int j = 0; j < c_; ++j) v[static_cast<size_t>(j)] = (*this)(i, j);
    return v;
  }

  std::vector<T> col(int j) const {
    std::vector<T> v(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
    return v;
  }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const T& x : e_)
      if (x != 0) return false;
    return true;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat s(a.r_, a.c_);
    for (size_t i = 0; i < a.e_.size(); ++i) s.e_[i] = a.e_[i] + b.e_[i];
    return s;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat s(a.r_, a.c_);
    for (size_t i = 0; i < a.e_.size(); ++i) s.e_[i] = a.e_[i] - b.e_[i];
    return s;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
    Mat p(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < b.c_; ++j) {
          const T& bkj = b(k, j);
          if (bkj == 0) continue;
          p(i, j) += aik * bkj;
        }
      }
    return p;
  }

  friend Mat operator*(const T& s, const Mat& a) {
    Mat p(a.r_, a.c_);
    for (size_t i = 0; i < a.e_.size(); ++i) p.e_[i] = s * a.e_[i];
    return p;
  }

 private:
  static void require_same_shape(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
  }

  int r_, c_;
  std::vector<T> e_;
};

using QMat = Mat<Rat>;
using ZMat = Mat<Int>;

template <class T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q) {
          if (b(p, q) == 0) continue;
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    }
  return k;
}

inline QMat qmat_from(const std::vector<std::vector<long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  QMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
      throw std::invalid_argument("ragged initializer");
    for (int j = 0; j < c; ++j) m(i, j) = rat_of(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  return m;
}

// Bareiss fraction-free elimination with column pivoting. Intermediate entries
// are minors of the input, so every division below is exact.
inline int rank_bareiss(ZMat m) {
  const int r = m.rows(), c = m.cols();
  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(rank, piv);
    for (int i = rank + 1; i < r; ++i) {
      if (m(i, col) == 0) {
        // Still rescale the row: Bareiss keeps a common minor denominator.
        for (int j = col + 1; j < c; ++j) {
          if (m(i, j) == 0) continue;
          Int t = m(rank, col) * m(i, j);
          mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      for (int j = col + 1; j < c; ++j) {
        Int t = m(rank, col) * m(i, j) - m(i, col) * m(rank, j);
        if (t == 0) {
          m(i, j) = 0;
        } else {
          mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
      }
      m(i, col) = 0;
    }
    prev = m(rank, col);
    ++rank;
  }
  return rank;
}

// Clears denominators row by row, then runs Bareiss.
inline ZMat integerize_rows(const QMat& m) {
  ZMat z(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
    for (int j = 0; j < m.cols(); ++j) {
      Rat scaled = m(i, j) * Rat(l);
      z(i, j) = scaled.get_num();
    }
  }
  return z;
}

inline int rank_exact(const QMat& m) { return rank_bareiss(integerize_rows(m)); }

// Reduced row echelon form over Q; pivot column indices appended to *pivots.
inline QMat rref(QMat m, std::vector<int>* pivots = nullptr) {
  const int r = m.rows(), c = m.cols();
  int lead = 0;
  for (int col = 0; col < c && lead < r; ++col) {
    int piv = -1;
    for (int i = lead; i < r; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(lead, piv);
    Rat inv = 1 / m(lead, col);
    for (int j = col; j < c; ++j)
      if (m(lead, j) != 0) m(lead, j) *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == lead || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (int j = col; j < c; ++j)
        if (m(lead, j) != 0) m(i, j) -= f * m(lead, j);
    }
    if (pivots) pivots->push_back(col);
    ++lead;
  }
  return m;
}

// Basis of {x : A x = 0} as the columns of the returned matrix.
inline QMat nullspace(const QMat& a) {
  std::vector<int> pivots;
  QMat r = rref(a, &pivots);
  const int c = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(c), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  const int nullity = c - static_cast<int>(pivots.size());
  QMat basis(c, nullity);
  int bcol = 0;
  for (int f = 0; f < c; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    basis(f, bcol) = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      basis(pivots[pr], bcol) = -r(static_cast<int>(pr), f);
    ++bcol;
  }
  return basis;
}

inline bool try_inverse(const QMat& a, QMat& out) {
  if (a.rows() != a.cols()) return false;
  const int n = a.rows();
  if (n == 0) {
    out = QMat(0, 0);
    return true;
  }
  QMat aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, QMat::identity(n));
  std::vector<int> pivots;
  QMat r = rref(aug, &pivots);
  if (static_cast<int>(pivots.size()) != n || pivots[static_cast<size_t>(n - 1)] != n - 1) return false;
  out = r.block(0, n, n, n);
  return true;
}

inline QMat inverse(const QMat& a) {
  QMat out;
  if (!try_inverse(a, out)) throw std::domain_error("matrix not invertible");
  return out;
}

// Row span kept in reduced echelon form for O(rows) membership tests.
class RowSpan {
 public:
  RowSpan() : cols_(0) {}
  explicit RowSpan(int cols) : cols_(cols) {}

  // Rows of m are inserted as generators.
  explicit RowSpan(const QMat& m) : cols_(m.cols()) {
    for (int i = 0; i < m.rows(); ++i) insert(m.row(i));
  }

  int dim() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  // Reduces v against the current basis; returns the residual.
  std::vector<Rat> reduce(std::vector<Rat> v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat& coef = v[static_cast<size_t>(pivots_[i])];
      if (coef == 0) continue;
      Rat f = coef;
      const auto& row = rows_[i];
      for (int j = pivots_[i]; j < cols_; ++j)
        if (row[static_cast<size_t>(j)] != 0) v[static_cast<size_t>(j)] -= f * row[static_cast<size_t>(j)];
    }
    return v;
  }

  bool contains(const std::vector<Rat>& v) const {
    auto res = reduce(v);
    for (const Rat& x : res)
      if (x != 0) return false;
    return true;
  }

  // Returns true if v enlarged the span.
  bool insert(std::vector<Rat> v) {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("RowSpan width mismatch");
    v = reduce(std::move(v));
    int lead = -1;
    for (int j = 0; j < cols_; ++j)
      if (v[static_cast<size_t>(j)] != 0) {
        lead = j;
        break;
      }
    if (lead < 0) return false;
    Rat inv = 1 / v[static_cast<size_t>(lead)];
    for (int j = lead; j < cols_; ++j)
      if (v[static_cast<size_t>(j)] != 0) v[static_cast<size_t>(j)] *= inv;
    // Back-substitute into existing rows, keep basis fully reduced.
    for (size_t i = 0; i < rows_.size(); ++i) {
      Rat f = rows_[i][static_cast<size_t>(lead)];
      if (f == 0) continue;
      for (int j = lead; j < cols_; ++j)
        if (v[static_cast<size_t>(j)] != 0) rows_[i][static_cast<size_t>(j)] -= f * v[static_cast<size_t>(j)];
    }
    // Insert keeping pivot order increasing.
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), lead);
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    return true;
  }

  // Basis rows as a matrix (reduced echelon form, pivots increasing).
  QMat basis() const {
    QMat m(dim(), cols_);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = rows_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
  }

  const std::vector<int>& pivots() const { return pivots_; }

 private:
  int cols_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<int> pivots_;
};

}  // namespace brank
