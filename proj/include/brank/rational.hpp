#pragma once

// Exact rational scalars. Thin layer over GMP's mpq_class: parsing of the
// "p/q" interchange strings, canonical printing, and a few predicates the
// rest of the library wants in one place.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brank {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat_of(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q" with optional sign; q must be nonzero.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rat q{Int(s)};
      return q;
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rat q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

// Canonical form: integer values print without "/1".
inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace brank
