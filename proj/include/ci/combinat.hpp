// Exact combinatorics: binomial coefficients, section-space dimensions,
// the table-driven restricted h^0 formulas for the three supported degree
// patterns, and the elementary binomial inequalities that close the
// case analysis in the certification engine.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ci/rational.hpp"

namespace ci {

// Complete-intersection shape: ambient dimension n and sorted degrees.
struct CIType {
  int n = 0;
  std::vector<int> degrees;

  CIType() = default;
  CIType(int n_, std::vector<int> degrees_);

  int c() const { return static_cast<int>(degrees.size()); }
  int dim() const { return n - c(); }
  bool operator==(const CIType& o) const {
    return n == o.n && degrees == o.degrees;
  }
  bool operator<(const CIType& o) const {
    if (n != o.n) return n < o.n;
    return degrees < o.degrees;
  }
  std::string to_string() const;  // "(n, d1,...,dc)"
};

// C(a,b) with the convention C(a,b) = 0 when b < 0 or a < b; C(a,0) = 1
// for a >= 0.
Int binom(long a, long b);

// Number of degree-d monomials in n+1 variables: C(n+d, d).
Int dim_forms(long n, long d);

// h^0(O_X(d)) for d among the degrees of ci, via the three supported
// degree patterns: all degrees equal / (2,2,D,...,D) / (2,D,...,D).
// Throws std::domain_error for any other pattern or for d not among the
// degrees. Values agree with the generic-ideal linear-algebra oracle.
Int h0_restricted(const CIType& ci, int d);

struct IneqResult {
  std::string id;    // one of E126, E116, E123, E112a..E112d
  Rat lhs;           // worst-case instantiation, exact
  Rat rhs;
  bool holds = false;
  std::string note;  // quantifier witness / vacuity note
};

// Evaluates the purely-binomial inequalities used by the certification
// engine at parameters (n, d), exactly. Quantified inequalities (E123,
// E112a..d) are checked over their full finite quantifier domain and the
// worst-margin witness is reported.
std::vector<IneqResult> elementary_inequalities(int n, int d);

}  // namespace ci
