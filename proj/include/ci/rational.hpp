// Exact big-integer and rational arithmetic aliases used throughout the
// toolkit. mpq_class keeps values in lowest terms with positive denominator,
// which is exactly the canonical form the report schema requires.
#pragma once

#include <gmpxx.h>

#include <string>

namespace ci {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

// Canonical text form "p/q" (just "p" when q == 1).
inline std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace ci
