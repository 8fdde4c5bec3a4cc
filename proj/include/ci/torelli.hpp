// Infinitesimal-Torelli certification toolkit: the projective-space sheaf
// cohomology vanishing table, its Koszul propagation to complete
// intersections, the two Flenner-style certification conditions (a
// cohomology-vanishing sweep and a divided-power multiplication surjectivity
// check over a prime field), and the exception-hunting sweep built on them.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ci/combinat.hpp"
#include "ci/fq.hpp"

namespace ci {

// One cohomology group H^b(P^r, Omega^a(ell)) on projective r-space.
struct CohomologySpot {
  int r = 1;           // projective-space dimension
  int a = 0;           // exterior power of the cotangent sheaf, 0 <= a <= r
  int b = 0;           // cohomological degree, 0 <= b <= r
  long long ell = 0;   // twist
};

// True exactly when the group vanishes. The nonvanishing locus consists of
// the three families (b==a, ell==0), (b==0, ell>a), (b==r, ell<a-r).
bool bott_vanishes(const CohomologySpot& spot);

// Sufficient vanishing certificate for H^b(X, Omega^a_{P^r}(ell)|_X) where X
// is a complete intersection of the given degrees: every first-page group
// H^{b+k}(P^r, Omega^a(ell - s)), for k in [0,c] and s a k-subset sum of the
// degrees, must vanish (groups with b+k > r vanish for dimension reasons).
// Returns false ("unknown") as soon as one spot is a nonvanishing group;
// that never claims the restricted group is actually nonzero.
bool restricted_vanishing_certified(int r, const std::vector<int>& degrees,
                                    int a, int b, long long ell);
bool restricted_vanishing_certified(int r, const std::vector<int>& degrees,
                                    int a, int b, long long ell,
                                    CohomologySpot* failing);

// A complete intersection together with a Hodge index p in [1, dim X].
// `ambient` and `dim_x` are kept verbally distinct everywhere in this module
// because the two dimension conventions differ by the codimension.
struct FlennerCase {
  CIType ci;
  int p = 1;

  FlennerCase(CIType ci_, int p_);

  int ambient() const { return ci.n; }
  int dim_x() const { return ci.n - ci.c(); }
  int degree_sum() const;
};

// One summand of the second-condition sweep: the multidegree e (summing to
// j) selects a line-bundle factor of Sym^j of the conormal sum, paired with
// the exterior power a = dim_x - 1 - j in cohomological degree b = j + 1.
struct TermTrace {
  int j = 0;
  std::vector<int> e;
  int a = 0;
  int b = 0;
  long long twist = 0;
  bool certified = false;
  CohomologySpot failing;  // populated only when certified is false
};

struct ConditionIIReport {
  bool certified = false;
  std::vector<TermTrace> terms;
};

// Vanishing sweep for H^{j+1}(X, Sym^j(N) (x) Omega^{dim_x-1-j}|_X (x) K^-1)
// with N the direct sum of O_X(-d_i) and K the canonical bundle of X:
// every term must be certified by restricted_vanishing_certified. The
// outcome depends only on the shape (ambient, degrees); the Hodge index is
// carried for record-keeping.
ConditionIIReport condition_ii(const FlennerCase& fc);

enum class SurjStatus {
  Surjective,
  NotSurjective,
  DegenerateTarget,  // the target space is zero: nothing to test
  BudgetExceeded,
};

std::string to_string(SurjStatus s);

struct ConditionIBudget {
  std::size_t max_space_dim = 1024;  // cap on dim A, dim B, dim T
  std::size_t max_pairs = 40000;     // cap on rows dim A * dim B
};

struct ConditionIReport {
  SurjStatus status = SurjStatus::BudgetExceeded;
  int hodge_p = 1;
  u64 q = 0;
  u64 seed = 0;           // seed that produced the accepted member
  std::size_t dim_left = 0;    // dim A  (multidegree sum dim_x - p)
  std::size_t dim_right = 0;   // dim B  (multidegree sum p - 1)
  std::size_t dim_target = 0;  // dim T  (multidegree sum dim_x - 1)
  std::size_t rank = 0;        // rank actually reached (0 if skipped)
  bool fast_path = false;      // decided without building the matrix
  std::vector<std::string> members;  // canonical member equations
};

// Surjectivity of the multiplication
//   A (x) B -> T,
//   A = (+)_{|e| = dim_x - p}  (S/I)_{e.d + w},
//   B = (+)_{|f| = p - 1}      (S/I)_{f.d + w},
//   T = (+)_{|g| = dim_x - 1}  (S/I)_{g.d + 2w},   w = sum(d) - ambient - 1,
// where the (e,f) block maps into g = e+f scaled by prod binom(e_k+f_k, e_k)
// (the divided-power structure constants), decided by rank over F_q on an
// explicit diagonal-plus-perturbation member drawn from the seed. Member
// regularity is verified by comparing every graded-piece dimension with the
// sieve value; irregular draws bump the seed internally.
ConditionIReport condition_i(const FlennerCase& fc, const PrimeField& field,
                             u64 seed = 1, const ConditionIBudget& budget = {});

struct TorelliRow {
  CIType ci;
  int ambient = 0;
  int dim_x = 0;
  bool cond_ii_certified = false;
  // Status per Hodge index p = 1..dim_x (index p-1).
  std::vector<SurjStatus> cond_i_status;
  // First Hodge index with a surjective multiplication, 0 if none found.
  int surjective_p = 0;
  bool certified = false;  // cond_ii certified and some p surjective
  bool flagged = false;    // cond_ii fails, or every p evaluated and none surjective
  std::string note;        // known-range caveats
};

// Certification sweep over every complete-intersection shape with
// 3 <= ambient <= max_ambient, dim X >= 2 and degree sum <= ambient + 2
// (beyond that cap every shape is of general type and certifies trivially:
// all sweep twists are strictly negative). Hodge indices are tried in
// increasing order and stop at the first surjective one.
std::vector<TorelliRow> torelli_sweep(int max_ambient,
                                      const PrimeField& field = PrimeField{},
                                      u64 seed = 1,
                                      const ConditionIBudget& budget = {});

}  // namespace ci
