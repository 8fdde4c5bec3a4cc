// Finite-field geometry checks: singular strata of complete intersections,
// nodal families with verified ordinary double points, graded cokernel
// obstructions for diagonal automorphisms, quadric pencils, cyclic examples,
// chord/projection bookkeeping, and torus stabilizers of Pluecker points.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ci/combinat.hpp"
#include "ci/eigencalc.hpp"
#include "ci/fq.hpp"
#include "ci/hpoly.hpp"
#include "ci/linalg.hpp"
#include "ci/rational.hpp"

namespace ci {

// --- projective point sets and linear subspaces --------------------------

struct PointSet {
  int n = 0;
  std::vector<std::vector<u64>> points;  // normalized, sorted, distinct
};

std::vector<u64> normalize_point(std::vector<u64> p, u64 q);
PointSet make_point_set(int n, std::vector<std::vector<u64>> pts, u64 q);

struct LinearSubspace {
  int n = 0;
  Matrix forms;  // rref rows of the cutting linear forms
  int dim() const { return n - static_cast<int>(forms.size()); }
};

LinearSubspace make_subspace(int n, Matrix forms, u64 q);
LinearSubspace whole_space(int n);
// Subspace {z_i = 0 : i in zero_coords}.
LinearSubspace coordinate_zero_subspace(int n, const std::vector<int>& zero_coords);

// Basis of the vector subspace cut out by the forms (rows, length n+1).
Matrix subspace_point_basis(const LinearSubspace& L, u64 q);

// Number of projective F_q-points of a dim-k subspace: (q^{k+1}-1)/(q-1).
u64 projective_point_count(int dim, u64 q);

// Enumerate all projective points of L (normalized); empty when dim < 0.
std::vector<std::vector<u64>> enumerate_projective_points(
    const LinearSubspace& L, u64 q);

// --- singular strata ------------------------------------------------------

std::vector<std::vector<HPoly>> jacobian_matrix(const std::vector<HPoly>& F,
                                                u64 q);

struct StrataReport {
  bool budget_ok = true;
  u64 points_in_subspace = 0;
  long points_on_x = 0;
  long smooth_count = 0;                 // corank-0 points of X cap Lambda
  std::map<int, PointSet> singular;      // corank r >= 1 -> points
};

// Buckets the F_q-points of X cap Lambda by the corank of the Jacobian
// restricted to directions inside Lambda.
StrataReport strata(const std::vector<HPoly>& F, const LinearSubspace& L,
                    const PrimeField& field, u64 budget_points);

// --- nodal families -------------------------------------------------------

struct NodalFamily {
  CIType ci;
  u64 seed = 0;
  std::vector<HPoly> F;
  PointSet nodes;  // the n+1 coordinate points
  std::vector<long> span_dims;  // dimensions of the vanishing-order spans used
};

// Seed-deterministic family through the coordinate points: the first c-1
// members vanish there to order >= 1, the last to order >= 2.  Requires
// top degree >= 3 (the order-2 span in degree 2 is empty) and n >= c+2.
NodalFamily nodal_ci(const CIType& ci, const PrimeField& field, u64 seed);

struct NodeCheck {
  std::vector<u64> point;
  bool on_x = false;
  bool upper_rows_full_rank = false;  // first c-1 differentials independent
  bool corank_one = false;            // full Jacobian has rank c-1
  bool lambda_solved = false;         // dF_c = sum lambda_i dF_i at the point
  bool hessian_nondegenerate = false;
  bool ok = false;
};

struct VerifyNodesReport {
  bool all_ok = false;
  long points_off_x = 0;
  std::vector<NodeCheck> checks;
};

// Certifies each listed point as an ordinary double point: corank-1
// Jacobian and a nondegenerate restricted Hessian in an affine chart.
// Rejects characteristic 2 (quadratic nondegeneracy is not a Hessian
// condition there).
VerifyNodesReport verify_nodes(const std::vector<HPoly>& F,
                               const PointSet& nodes,
                               const PrimeField& field);

// dim (S/I)_d by linear algebra over F_q.
long h0_oracle(const std::vector<HPoly>& F, int n, int d, u64 q);

// --- graded cokernel obstruction -----------------------------------------

struct FixedCokernelReport {
  std::vector<int> xi;            // weight class of each generator
  std::vector<long> block_dims;   // dim (S/I)_{d_i} per generator
  long total_dim = 0;
  long rank = 0;
  long shortfall = 0;             // total_dim - rank
  bool shortfall_positive = false;
  bool two_quadric_pencil_family = false;
};

// For weight-eigenvector generators F_i, computes the dimension of
// (image of the tangent rows) + (ambient weight-class rows) inside
// the direct sum of the graded pieces (S/I)_{d_i}; a positive shortfall
// certifies a fixed cokernel direction.  Requires q = 1 mod p.
FixedCokernelReport fixed_cokernel_test(const std::vector<HPoly>& F,
                                        const EigenSpec& spec,
                                        const PrimeField& field);

// --- quadric pencils ------------------------------------------------------

struct PencilReport {
  int n = 0;  // projective dimension: eigenvalue count - 1
  bool sign_maps_preserve_both_forms = false;
  u64 group_order_mod_center = 0;  // expected 2^n
  bool group_order_ok = false;
  // Nonidentity Moebius transformations fixing the eigenvalue set,
  // normalized as (a,b,c,d) for z -> (az+b)/(cz+d).
  std::vector<std::array<u64, 4>> moebius_symmetries;
  bool eigenvalues_general = false;  // true when no such symmetry exists
};

// X = {sum z_i^2 = sum lambda_i z_i^2 = 0}: verifies the sign-change group
// of order 2^n (mod global sign) and searches PGL_2 for eigenvalue-set
// symmetries.  Eigenvalues must be distinct; q must be odd; length >= 5.
PencilReport pencil_automorphisms(const std::vector<u64>& eigenvalues,
                                  const PrimeField& field);

// --- cyclic (2,2) example -------------------------------------------------

struct CyclicReport {
  int n = 0;
  u64 q = 0;
  int ext_degree = 1;
  std::string zeta, eta;          // the roots of unity used
  bool d_scaled_by_eta = false;   // pullback of D equals eta * D
  bool e_fixed = false;           // pullback of E equals E
  bool smoothness_checked = false;
  bool smooth = false;
};

// D = sum z_i^2, E = sum eta^i z_i^2 in P^{n-1}, with the cyclic coordinate
// map sigma(z_i) = zeta z_{i+1} where zeta^2 = eta is a primitive n-th root
// of unity; verifies the two pullback identities coefficient-exactly, and
// brute-forces smoothness of D cap E when the roots live in the prime field
// and the point budget allows.
CyclicReport cyclic_22_example(int n, const PrimeField& field,
                               u64 budget_points);

// --- chords and linear projections ---------------------------------------

struct ChordReport {
  PointSet chord;
  int chord_dim_estimate = -1;   // round(log_q of the point count)
  PointSet image;
  int image_dim_estimate = -1;
  long center_hits = 0;          // chord points inside the center (skipped)
};

// Chord set C_{A,B} (union of lines through pairs) and its image under the
// linear projection with the given center and target.  The center and
// target must have complementary dimensions and empty intersection.
ChordReport chord_and_projection(const PointSet& a, const PointSet& b,
                                 const LinearSubspace& center,
                                 const LinearSubspace& target,
                                 const PrimeField& field);

// --- Pluecker stabilizers -------------------------------------------------

struct PlueckerReport {
  int m = 0, n = 0;
  u64 seed = 0;
  bool genericity_ok = false;      // the random matrix had full rank
  bool all_minors_nonzero = false;
  long support_size = 0;
  long lattice_rank = 0;
  Int lattice_index;               // meaningful only at full rank
  bool stabilizer_trivial = false;
  bool enumerated = false;         // torus brute force ran within budget
  bool enumeration_agrees = false;
  std::string note;
};

// Stabilizer of the Pluecker point of a random (m+1)-plane in P^n under the
// diagonal torus: trivial exactly when the difference lattice of the
// supported minors' exponent vectors is the full root lattice (rank n,
// index 1).  Cross-checked by torus enumeration when (q-1)^n fits the
// budget.
PlueckerReport pluecker_stabilizer(int m, int n, const PrimeField& field,
                                   u64 seed, u64 torus_budget);

// --- frozen example data ----------------------------------------------------
// Shared by the CLI `varieties` subcommand and the acceptance sweep, so both
// always exercise the same instances.

// Eigenvalue tuples (length n+1, distinct mod both sweep primes 101 and 103)
// verified to admit no Moebius set-symmetry; keys n = 4, 5, 6.
const std::map<int, std::vector<u64>>& pencil_example_eigenvalues();

// Base primes for the cyclic pair of quadrics: q = 1 mod 2n, so all needed
// roots of unity live in the prime field and gcd(n, q) = 1; keys n = 3..8.
const std::map<int, u64>& cyclic_example_fields();

struct NodalExampleSpec {
  CIType ci;
  u64 q;
  u64 seed;  // frozen seed whose family is singular exactly at the nodes
};

// The nodal showcase families with their fields and frozen seeds.
const std::vector<NodalExampleSpec>& nodal_example_specs();

}  // namespace ci
