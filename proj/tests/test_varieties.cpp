#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ci/combinat.hpp"
#include "ci/hpoly.hpp"
#include "ci/varieties.hpp"
#include "doctest.h"

using namespace ci;

namespace {

// z0*z1*z2 + z0*z1*z3 + z0*z2*z3 + z1*z2*z3: the four-nodal cubic surface.
HPoly four_nodal_cubic(u64 q) {
  return make_hpoly(3, 3,
                    {{1, {1, 1, 1, 0}},
                     {1, {1, 1, 0, 1}},
                     {1, {1, 0, 1, 1}},
                     {1, {0, 1, 1, 1}}},
                    q);
}

PointSet coordinate_points(int n, u64 q) {
  std::vector<std::vector<u64>> pts;
  for (int i = 0; i <= n; ++i) {
    std::vector<u64> p(n + 1, 0);
    p[i] = 1;
    pts.push_back(std::move(p));
  }
  return make_point_set(n, std::move(pts), q);
}

u64 dot_modq(const Row& a, const Row& b, u64 q) {
  u64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = (s + a[i] * b[i]) % q;
  return s;
}

}  // namespace

TEST_SUITE("varieties") {

TEST_CASE("point normalization") {
  CHECK(normalize_point({0, 2, 4}, 5) == std::vector<u64>{0, 1, 2});
  CHECK(normalize_point({3, 0, 6}, 7) == std::vector<u64>{1, 0, 2});
  CHECK_THROWS_AS(normalize_point({0, 0, 0}, 5), std::invalid_argument);

  // Projectively equal points collapse; the set is sorted.
  const PointSet s = make_point_set(
      2, {{0, 2, 4}, {0, 1, 2}, {2, 0, 4}}, 5);
  REQUIRE(s.points.size() == 2);
  CHECK(s.points[0] == std::vector<u64>{0, 1, 2});
  CHECK(s.points[1] == std::vector<u64>{1, 0, 2});
}

TEST_CASE("linear subspaces") {
  const LinearSubspace all = whole_space(3);
  CHECK(all.dim() == 3);
  const LinearSubspace line = coordinate_zero_subspace(3, {2, 3});
  CHECK(line.dim() == 1);
  const Matrix basis = subspace_point_basis(line, 101);
  REQUIRE(basis.size() == 2);
  for (const Row& v : basis)
    for (const Row& f : line.forms) CHECK(dot_modq(v, f, 101) == 0);
}

TEST_CASE("projective point counts and enumeration") {
  CHECK(projective_point_count(0, 101) == 1);
  CHECK(projective_point_count(1, 5) == 6);
  CHECK(projective_point_count(2, 5) == 31);
  CHECK(projective_point_count(3, 101) == 1040604);

  auto pts = enumerate_projective_points(whole_space(2), 5);
  CHECK(pts.size() == 31);
  // All normalized, and pairwise distinct once sorted.
  for (const auto& p : pts) CHECK(p == normalize_point(p, 5));
  std::sort(pts.begin(), pts.end());
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());

  const auto line_pts =
      enumerate_projective_points(coordinate_zero_subspace(2, {0}), 5);
  CHECK(line_pts.size() == 6);
  for (const auto& p : line_pts) CHECK(p[0] == 0);
}

TEST_CASE("strata of a split conic") {
  // X = {z0 z1 = 0} in the projective plane: two lines crossing at (0,0,1).
  const u64 q = 5;
  const HPoly f = make_hpoly(2, 2, {{1, {1, 1, 0}}}, q);
  const auto rep = strata({f}, whole_space(2), PrimeField{q, 1}, 1000);
  CHECK(rep.budget_ok);
  CHECK(rep.points_in_subspace == 31);
  CHECK(rep.points_on_x == 11);  // 6 + 6 - 1
  CHECK(rep.smooth_count == 10);
  REQUIRE(rep.singular.size() == 1);
  REQUIRE(rep.singular.count(1) == 1);
  const PointSet& nodes = rep.singular.at(1);
  REQUIRE(nodes.points.size() == 1);
  CHECK(nodes.points[0] == std::vector<u64>{0, 0, 1});

  // The line z1 = 0 lies inside X, so the differential restricted to its
  // directions vanishes identically: every point counts as corank 1.
  const auto restricted =
      strata({f}, coordinate_zero_subspace(2, {1}), PrimeField{q, 1}, 1000);
  CHECK(restricted.points_in_subspace == 6);
  CHECK(restricted.points_on_x == 6);
  CHECK(restricted.smooth_count == 0);
  REQUIRE(restricted.singular.count(1) == 1);
  CHECK(restricted.singular.at(1).points.size() == 6);

  // An insufficient budget is reported, not silently exceeded.
  const auto broke = strata({f}, whole_space(2), PrimeField{q, 1}, 10);
  CHECK_FALSE(broke.budget_ok);
}

TEST_CASE("four-nodal cubic surface") {
  const u64 q = 11;
  const HPoly f = four_nodal_cubic(q);
  const PointSet nodes = coordinate_points(3, q);

  const auto ver = verify_nodes({f}, nodes, PrimeField{q, 1});
  CHECK(ver.all_ok);
  CHECK(ver.points_off_x == 0);
  REQUIRE(ver.checks.size() == 4);
  for (const auto& c : ver.checks) {
    CHECK(c.on_x);
    CHECK(c.corank_one);
    CHECK(c.lambda_solved);
    CHECK(c.hessian_nondegenerate);
    CHECK(c.ok);
  }

  const auto rep = strata({f}, whole_space(3), PrimeField{q, 1}, 2000);
  CHECK(rep.budget_ok);
  REQUIRE(rep.singular.size() == 1);
  REQUIRE(rep.singular.count(1) == 1);
  CHECK(rep.singular.at(1).points == nodes.points);
  CHECK(rep.smooth_count == rep.points_on_x - 4);

  // The same certificates hold over a larger field.
  const auto ver101 = verify_nodes({four_nodal_cubic(101)},
                                   coordinate_points(3, 101),
                                   PrimeField{101, 1});
  CHECK(ver101.all_ok);
}

TEST_CASE("node verification rejects characteristic two") {
  const HPoly f = four_nodal_cubic(2);
  CHECK_THROWS_AS(verify_nodes({f}, coordinate_points(3, 2), PrimeField{2, 1}),
                  std::domain_error);
}

TEST_CASE("seed-deterministic nodal families") {
  const auto fam = nodal_ci(CIType{3, {3}}, PrimeField{11, 1}, 1);
  CHECK(fam.ci == CIType{3, {3}});
  REQUIRE(fam.F.size() == 1);
  CHECK(fam.F[0].degree == 3);
  // Order->=2 span in degree 3: the four square-free monomials.
  CHECK(fam.span_dims == std::vector<long>{4});
  CHECK(fam.nodes.points == coordinate_points(3, 11).points);
  // Every monomial used keeps exponents <= 1.
  for (const Term& t : fam.F[0].terms)
    for (int e : t.exp) CHECK(e <= 1);

  const auto fam2 = nodal_ci(CIType{4, {2, 3}}, PrimeField{11, 1}, 1);
  REQUIRE(fam2.F.size() == 2);
  CHECK(fam2.span_dims == std::vector<long>{10, 10});
  CHECK(fam2.F[0].degree == 2);
  CHECK(fam2.F[1].degree == 3);

  // Determinism: same seed, same family; different seed, different family.
  const auto fam_again = nodal_ci(CIType{3, {3}}, PrimeField{11, 1}, 1);
  CHECK(fam_again.F[0] == fam.F[0]);

  CHECK_THROWS_AS(nodal_ci(CIType{4, {2, 2}}, PrimeField{11, 1}, 1),
                  std::domain_error);  // top degree 2
  CHECK_THROWS_AS(nodal_ci(CIType{3, {2, 3}}, PrimeField{11, 1}, 1),
                  std::domain_error);  // n < c + 2
}

TEST_CASE("frozen nodal examples verify as ordinary double points") {
  for (const NodalExampleSpec& spec : nodal_example_specs()) {
    CAPTURE(spec.ci.to_string());
    CAPTURE(spec.q);
    const auto fam = nodal_ci(spec.ci, PrimeField{spec.q, 1}, spec.seed);
    CHECK(fam.nodes.points.size() == static_cast<std::size_t>(spec.ci.n + 1));
    const auto ver = verify_nodes(fam.F, fam.nodes, PrimeField{spec.q, 1});
    CHECK(ver.all_ok);
  }
}

TEST_CASE("dimension oracle for graded quotients") {
  const u64 q = 101;
  // Smooth quadric surface: 10 - 1 = 9.
  const HPoly quad = make_hpoly(
      3, 2, {{1, {1, 1, 0, 0}}, {1, {0, 0, 1, 1}}}, q);
  CHECK(h0_oracle({quad}, 3, 2, q) == 9);
  CHECK(Int(h0_oracle({quad}, 3, 2, q)) == h0_restricted(CIType{3, {2}}, 2));

  // Generic cubic surface in degree 3: 20 - 1 = 19.
  const HPoly cubic = make_hpoly(
      3, 3, {{1, {3, 0, 0, 0}}, {1, {0, 3, 0, 0}}, {1, {0, 0, 3, 0}},
             {1, {0, 0, 0, 3}}, {7, {1, 1, 1, 0}}}, q);
  CHECK(Int(h0_oracle({cubic}, 3, 3, q)) == h0_restricted(CIType{3, {3}}, 3));
}

TEST_CASE("fixed cokernel of the diagonal cubic surface") {
  const u64 q = 7;  // 7 = 1 mod 3
  HPoly f;
  {
    std::vector<Term> terms;
    for (int i = 0; i <= 3; ++i) {
      ExpVec e(4, 0);
      e[i] = 3;
      terms.push_back({1, e});
    }
    f = make_hpoly(3, 3, terms, q);
  }
  const EigenSpec spec(3, {0, 0, 0, 1});
  const auto rep = fixed_cokernel_test({f}, spec, PrimeField{q, 1});
  CHECK(rep.xi == std::vector<int>{0});
  CHECK(rep.block_dims == std::vector<long>{19});
  CHECK(rep.total_dim == 19);
  // Tangent rows span the squarefull classes (15 dims); the weight-0
  // monomial rows add only z0*z1*z2.  Unreached: the three mixed monomials
  // that involve the weight-1 variable linearly or quadratically.
  CHECK(rep.rank == 16);
  CHECK(rep.shortfall == 3);
  CHECK(rep.shortfall_positive);
  CHECK_FALSE(rep.two_quadric_pencil_family);

  CHECK_THROWS_AS(fixed_cokernel_test({f}, spec, PrimeField{11, 1}),
                  std::domain_error);  // 11 != 1 mod 3
}

TEST_CASE("quadric pencil symmetry scan") {
  const auto rep = pencil_automorphisms({0, 1, 3, 7, 12}, PrimeField{101, 1});
  CHECK(rep.n == 4);
  CHECK(rep.sign_maps_preserve_both_forms);
  CHECK(rep.group_order_mod_center == 16);
  CHECK(rep.group_order_ok);
  CHECK(rep.moebius_symmetries.empty());
  CHECK(rep.eigenvalues_general);

  const auto rep5 = pencil_automorphisms({0, 1, 3, 7, 12, 20},
                                         PrimeField{103, 1});
  CHECK(rep5.group_order_mod_center == 32);
  CHECK(rep5.group_order_ok);
  CHECK(rep5.eigenvalues_general);

  // An arithmetic progression is fixed by z -> (last - z): not general.
  const auto sym = pencil_automorphisms({0, 1, 2, 3, 4}, PrimeField{101, 1});
  CHECK_FALSE(sym.eigenvalues_general);
  CHECK_FALSE(sym.moebius_symmetries.empty());

  CHECK_THROWS_AS(pencil_automorphisms({0, 1, 3, 7, 12}, PrimeField{2, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(pencil_automorphisms({0, 1, 3, 7}, PrimeField{101, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(pencil_automorphisms({0, 1, 3, 7, 108}, PrimeField{101, 1}),
                  std::invalid_argument);  // 108 = 7 mod 101
}

TEST_CASE("cyclic pair of quadrics") {
  const auto rep = cyclic_22_example(3, PrimeField{7, 1}, 10000);
  CHECK(rep.n == 3);
  CHECK(rep.q == 7);
  CHECK(rep.d_scaled_by_eta);
  CHECK(rep.e_fixed);
  CHECK(rep.smoothness_checked);
  CHECK(rep.smooth);
  CHECK_FALSE(rep.zeta.empty());
  CHECK_FALSE(rep.eta.empty());

  const auto rep4 = cyclic_22_example(4, PrimeField{17, 1}, 10000);
  CHECK(rep4.d_scaled_by_eta);
  CHECK(rep4.e_fixed);
  CHECK(rep4.smoothness_checked);
  CHECK(rep4.smooth);

  // With no point budget the identities still hold; smoothness is skipped.
  const auto tight = cyclic_22_example(3, PrimeField{7, 1}, 0);
  CHECK(tight.d_scaled_by_eta);
  CHECK(tight.e_fixed);
  CHECK_FALSE(tight.smoothness_checked);

  CHECK_THROWS_AS(cyclic_22_example(7, PrimeField{7, 1}, 0),
                  std::domain_error);  // gcd(n, q) > 1
  CHECK_THROWS_AS(cyclic_22_example(2, PrimeField{7, 1}, 0),
                  std::invalid_argument);
}

TEST_CASE("frozen example tables are well-formed") {
  for (const auto& [n, eigs] : pencil_example_eigenvalues()) {
    CHECK(static_cast<int>(eigs.size()) == n + 1);
    for (u64 q : {u64(101), u64(103)}) {
      std::vector<u64> reduced;
      for (u64 l : eigs) reduced.push_back(l % q);
      std::sort(reduced.begin(), reduced.end());
      CHECK(std::adjacent_find(reduced.begin(), reduced.end()) ==
            reduced.end());
    }
  }
  for (const auto& [n, q] : cyclic_example_fields()) {
    CHECK(is_prime_u64(q));
    CHECK(q % (2 * static_cast<u64>(n)) == 1);  // all roots in prime field
  }
}

TEST_CASE("chords and projection of two points") {
  const u64 q = 5;
  const PointSet a = make_point_set(3, {{1, 0, 0, 0}}, q);
  const PointSet b = make_point_set(3, {{0, 1, 0, 0}}, q);
  const LinearSubspace center = coordinate_zero_subspace(3, {0, 1, 2});
  const LinearSubspace target = coordinate_zero_subspace(3, {3});
  const auto rep =
      chord_and_projection(a, b, center, target, PrimeField{q, 1});
  // The chord set is the full line through the two coordinate points.
  CHECK(rep.chord.points.size() == 6);
  CHECK(rep.chord_dim_estimate == 1);
  for (const auto& p : rep.chord.points) {
    CHECK(p[2] == 0);
    CHECK(p[3] == 0);
  }
  // That line avoids the center and projects isomorphically.
  CHECK(rep.center_hits == 0);
  CHECK(rep.image.points.size() == 6);
  CHECK(rep.image_dim_estimate == 1);
}

TEST_CASE("torus stabilizer of a generic line") {
  const auto rep = pluecker_stabilizer(1, 3, PrimeField{101, 1}, 1, 0);
  CHECK(rep.genericity_ok);
  CHECK(rep.all_minors_nonzero);
  CHECK(rep.support_size == 6);
  CHECK(rep.lattice_rank == 3);
  CHECK(rep.lattice_index == Int(1));
  CHECK(rep.stabilizer_trivial);
  CHECK_FALSE(rep.enumerated);  // budget 0

  // Small field: brute-force the torus and compare verdicts.
  const auto small = pluecker_stabilizer(1, 3, PrimeField{5, 1}, 3, 100000);
  CHECK(small.genericity_ok);
  CHECK(small.enumerated);
  CHECK(small.enumeration_agrees);
}

}  // TEST_SUITE
