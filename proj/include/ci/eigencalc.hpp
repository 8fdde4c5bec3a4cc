// Eigenspace dimension counting for an order-p diagonal automorphism acting
// on degree-d forms, plus the two dimension-bound checks the certification
// engine relies on. All counting is done by dynamic programming over weight
// residue classes — never by monomial enumeration on large spaces.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ci/rational.hpp"

namespace ci {

// Order-p diagonal action: variable i is scaled by the weights[i]-th power
// of a fixed primitive p-th root of unity.
struct EigenSpec {
  int p = 2;
  std::vector<int> weights;  // length n+1, entries in [0, p)

  EigenSpec(int p_, std::vector<int> weights_);

  int n() const { return static_cast<int>(weights.size()) - 1; }
  std::vector<long> multiplicities() const;  // a[j] = #{i : weights[i] = j}
  int mu() const;                            // #{j : a[j] > 0}
  std::string to_string() const;
};

// dim of the w-eigenspace of degree-d forms, for every residue w in [0, p).
// Entries sum to C(n+d, d).
std::vector<Int> eigenspace_dims(const EigenSpec& spec, int d);

// DP cores on a bare multiplicity vector (a[j] variables of residue j).
// The u64 variant returns the full degree table [deg][w] for deg <= d_max
// and is the sweep fast path; values stay far below 2^63 for the sweep
// ranges used here (dimension counts are bounded by C(n+d, d)).
std::vector<Int> eigen_dims_from_multiplicities(const std::vector<long>& a,
                                                int p, int d);
std::vector<std::vector<std::uint64_t>> eigen_dims_u64_all_degrees(
    const std::vector<long>& a, int p, int d_max);

// Verdict for the dimension-gap bound: for every w,
//   d >= 3 (and n >= 3):  C(n+d,d) - dim E_{d,w}  >  (n+1)^2 - sum a_j^2
//   d == 2 (non-strict):  C(n+2,2) - dim E_{2,w} >= ((n+1)^2 - sum a_j^2)/2
// Out-of-range inputs (n < 3) are reported as such, not judged.
struct Lemma22Report {
  int n = 0, d = 0, p = 0;
  bool in_range = false;
  bool strict = false;        // strict branch (d >= 3) taken
  Int space;                  // C(n+d, d)
  std::vector<Int> dims;      // per-w eigenspace dimensions
  Rat rhs;                    // bound right-hand side (halved when d == 2)
  std::vector<Rat> margins;   // (space - dim_w) - rhs
  bool holds = false;
  std::string note;
};
Lemma22Report check_lemma22(const EigenSpec& spec, int d);

// Verdict for the closed-form maximum bound and its recursion:
//   max_w dim E_{d,w} <= sum_{k=0}^{n+1-mu} (mu-1)^k/mu^{k+1} C(n+d-k, d)
//                        + (mu-1)^{n+1-mu}/mu^{n+2-mu} C(d+mu-1, d+1)
// and, with a maximal multiplicity decremented,
//   max_w dim E_{d,w} <= (1/mu) C(n+d,d) + ((mu-1)/mu) * reduced_max.
struct Lemma24Report {
  int n = 0, d = 0, p = 0, mu = 0;
  Int max_dim;
  int argmax_w = 0;
  Rat bound;
  bool bound_holds = false;
  Int reduced_max;
  Rat recursion_rhs;
  bool recursion_holds = false;
  bool recursion_equality = false;
};
Lemma24Report check_lemma24(const EigenSpec& spec, int d);

// True when the multiplicity vector is the lexicographically largest element
// of its orbit under the affine relabelings j -> u*j + k of Z/p (unit u,
// translation k). Those relabelings correspond to replacing the diagonal
// action by a power of itself or twisting it by a scalar, so every verdict
// computed here is constant on orbits; sweeps enumerate only canonical
// representatives.
bool is_affine_canonical(const std::vector<long>& a, int p);
bool is_rotation_canonical(const std::vector<long>& a, int p);

// Sweep domain enumeration: calls fn(a) once for every affine-canonical
// multiplicity vector of length p with entries summing to `total` and at
// least two nonzero classes. Canonical vectors start with their maximum
// entry, which the recursion uses to prune.
void for_each_canonical_multiplicity(
    long total, int p, const std::function<void(const std::vector<long>&)>& fn);

// A weight vector realizing the multiplicity vector (residues ascending).
std::vector<int> weights_from_multiplicities(const std::vector<long>& a);

}  // namespace ci
