// Sparse homogeneous polynomials over a prime field, with the exact-degree
// bookkeeping the geometry checks need: derivatives, evaluation, canonical
// text form, monomial bases, and graded quotient rings S/I.
#pragma once

#include <string>
#include <vector>

#include "ci/fq.hpp"
#include "ci/linalg.hpp"

namespace ci {

using ExpVec = std::vector<int>;  // one exponent per variable z0..zn

struct Term {
  u64 coeff;  // nonzero, reduced mod q
  ExpVec exp;
  bool operator==(const Term&) const = default;
};

// Invariants: every term has the same total degree, coefficients are
// nonzero, exponent vectors are distinct and sorted descending
// lexicographically (canonical graded-lex order within one degree).
struct HPoly {
  int n = 0;       // ambient projective dimension: variables z0..zn
  int degree = 0;  // total degree (0 allowed only for the zero polynomial)
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  // Terms are kept canonical, so structural equality is polynomial equality.
  bool operator==(const HPoly&) const = default;
};

// Normalizing constructor: merges duplicate exponent vectors, drops zero
// coefficients, sorts, and validates homogeneity.
HPoly make_hpoly(int n, int degree, std::vector<Term> terms, u64 q);

HPoly hp_add(const HPoly& a, const HPoly& b, u64 q);
HPoly hp_scale(const HPoly& a, u64 s, u64 q);
HPoly hp_mul(const HPoly& a, const HPoly& b, u64 q);

// Partial derivative with respect to z_j (degree drops by one; exponents
// divisible by the characteristic annihilate their term).
HPoly hp_derivative(const HPoly& a, int j, u64 q);

// Evaluate at a point (coordinates reduced mod q).
u64 hp_eval(const HPoly& a, const std::vector<u64>& point, u64 q);

// Substitution z_i -> scale[i] * z_{perm[i]}.
HPoly hp_pullback_scaled_permutation(const HPoly& a,
                                     const std::vector<int>& perm,
                                     const std::vector<u64>& scale, u64 q);

// Multiply by a single monomial.
HPoly hp_multiply_monomial(const HPoly& a, const ExpVec& mono, u64 q);

// Canonical text: "c*z0^a0*...*zn^an + ..." with terms in the canonical
// order; exponent-0 factors are omitted, exponent-1 factors drop the hat.
std::string hp_to_string(const HPoly& a);

// All exponent vectors of total degree d in n+1 variables, in the canonical
// descending order used for coefficient vectors.
std::vector<ExpVec> monomial_basis(int n, int d);

// Position lookup helper for a basis created by monomial_basis.
long monomial_index(const std::vector<ExpVec>& basis, const ExpVec& e);

// Coefficient vector of `a` with respect to monomial_basis(n, a.degree).
Row coefficient_vector(const HPoly& a, const std::vector<ExpVec>& basis);

// Graded piece (S/I)_t for the ideal generated by polys: a monomial basis
// of S_t together with an rref of the ideal's degree-t slice, so vectors
// can be reduced to quotient coordinates.
class GradedQuotient {
 public:
  GradedQuotient(int n, int t, const std::vector<HPoly>& ideal_gens, u64 q);

  int n() const { return n_; }
  int degree() const { return t_; }
  long ambient_dim() const { return static_cast<long>(basis_.size()); }
  long dim() const { return dim_; }
  const std::vector<ExpVec>& monomials() const { return basis_; }

  // Quotient coordinates (length dim()) of a degree-t coefficient vector.
  Row reduce(Row coeffs) const;
  Row reduce_monomial(const ExpVec& e) const;
  Row reduce_poly(const HPoly& a) const;

  // Monomial representing quotient coordinate i (a non-pivot column).
  const ExpVec& quotient_monomial(long i) const {
    return basis_[static_cast<std::size_t>(free_cols_[static_cast<std::size_t>(i)])];
  }

 private:
  int n_, t_;
  u64 q_;
  std::vector<ExpVec> basis_;
  Rref ideal_rref_;
  std::vector<long> free_cols_;  // non-pivot columns = quotient basis
  long dim_;
};

}  // namespace ci
