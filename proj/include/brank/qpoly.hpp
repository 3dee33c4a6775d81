#pragma once

// Dense univariate polynomials over the rationals. Used for exact evaluation
// of border-rank families in one parameter t, and as the target ring of the
// Kronecker substitution in the symbolic 1-genericity fallback.

#include <algorithm>
#include <string>
#include <vector>

#include "brank/errors.hpp"
#include "brank/rational.hpp"

namespace brank {

class QPoly {
 public:
  QPoly() = default;
  QPoly(Rat constant) {  // NOLINT: implicit by design, scalars embed
    if (constant != 0) c_.push_back(std::move(constant));
  }
  explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly monomial(int degree, Rat coeff = Rat(1)) {
    if (coeff == 0) return {};
    std::vector<Rat> c(static_cast<size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return QPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

  // Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  Rat coeff(int k) const {
    if (k < 0 || k > degree()) return Rat(0);
    return c_[static_cast<size_t>(k)];
  }

  Rat eval(const Rat& t) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
      if (i < a.c_.size()) c[i] += a.c_[i];
      if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return QPoly(std::move(c));
  }

  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
      if (i < a.c_.size()) c[i] += a.c_[i];
      if (i < b.c_.size()) c[i] -= b.c_[i];
    }
    return QPoly(std::move(c));
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return QPoly(std::move(c));
  }

  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return !(*this == o); }
  bool operator==(int v) const { return *this == QPoly(Rat(v)); }
  bool operator!=(int v) const { return !(*this == v); }

  // Exact quotient; throws if the division leaves a remainder.
  static QPoly divexact(const QPoly& num, const QPoly& den) {
    if (den.is_zero()) throw BadInput("polynomial division by zero");
    if (num.is_zero()) return {};
    if (num.degree() < den.degree()) throw BadInput("polynomial division not exact");
    std::vector<Rat> rem = num.c_;
    std::vector<Rat> quo(static_cast<size_t>(num.degree() - den.degree()) + 1);
    const Rat& lead = den.c_.back();
    for (int k = num.degree() - den.degree(); k >= 0; --k) {
      Rat q = rem[static_cast<size_t>(k + den.degree())] / lead;
      quo[static_cast<size_t>(k)] = q;
      if (q == 0) continue;
      for (int j = 0; j <= den.degree(); ++j)
        rem[static_cast<size_t>(k + j)] -= q * den.c_[static_cast<size_t>(j)];
    }
    for (const Rat& r : rem)
      if (r != 0) throw BadInput("polynomial division not exact");
    return QPoly(std::move(quo));
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = 0; k <= degree(); ++k) {
      if (c_[static_cast<size_t>(k)] == 0) continue;
      if (!s.empty()) s += " + ";
      s += rat_str(c_[static_cast<size_t>(k)]);
      if (k >= 1) s += "*" + var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;  // c_[k] multiplies t^k; invariant: back() != 0
};

}  // namespace brank
