// Case engine: evaluates the reduced inequalities that certify a diagonal
// automorphism cannot act trivially on the deformation cokernel of a
// complete intersection, for the three supported degree patterns.
#pragma once

#include <string>
#include <vector>

#include "ci/combinat.hpp"
#include "ci/eigencalc.hpp"

namespace ci {

struct CaseCertificate {
  std::string case_id;   // equal-degrees | two-quadrics | one-quadric
  int w = 0;             // eigenvalue residue the top-degree term uses
  int b1 = 0, b2 = 0;    // split parameters, b1 >= b2 >= 0
  std::string scenario;  // two-quadrics only: quadric-classes-distinct|equal
  Rat lhs, rhs;
  bool holds = false;
};

// Degree-pattern classification used for dispatch.
enum class CasePattern {
  EqualDegrees,  // (d,...,d)
  TwoQuadrics,   // (2,2,d,...,d), d >= 3
  OneQuadric,    // (2,d,...,d), d >= 3
  Mixed          // anything else
};
CasePattern classify_degrees(const std::vector<int>& degrees);

// All certificates for the all-degrees-equal pattern: for every residue w
// and split b1+b2 = c,
//   (n+1)^2 - sum a_j^2 + (b1-b2) dim E_{d,w} + 2 b1 b2  <  b1 C(n+d,d).
// The two-quadric pencil type (c,d)=(2,2) is rejected: that family carries
// the 2^n sign-change automorphism group and is certified by the dedicated
// pencil verifier, not by this engine.
std::vector<CaseCertificate> certify_equal_degrees(const CIType& ci,
                                                   const EigenSpec& spec);

// Certificates for the (2,2,d,...,d) pattern, splits b1+b2 = c-2, with the
// quadric-sector contribution replaced by its worst case under the two
// scenarios (the two quadric eigenclasses distinct / equal).
std::vector<CaseCertificate> certify_two_quadrics_case(const CIType& ci,
                                                       const EigenSpec& spec);

// Certificates for the (2,d,...,d) pattern, splits b1+b2 = c-1.
std::vector<CaseCertificate> certify_one_quadric_case(const CIType& ci,
                                                      const EigenSpec& spec);

// Dispatch on the degree pattern; throws for Mixed (no matching engine)
// and for the excluded (2,2) pencil type.
std::vector<CaseCertificate> certify_dispatch(const CIType& ci,
                                              const EigenSpec& spec);

// Sweep domain for the engines: every sorted degree tuple over
// [2, max_degree] with at most max_c entries that is not all-quadric and
// matches one of the three case patterns (Mixed tuples have no engine).
std::vector<std::vector<int>> case_engine_degree_tuples(int max_degree = 4,
                                                        int max_c = 3);

}  // namespace ci
