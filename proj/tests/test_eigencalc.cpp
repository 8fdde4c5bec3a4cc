#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "ci/combinat.hpp"
#include "ci/eigencalc.hpp"
#include "ci/hpoly.hpp"
#include "doctest.h"

using namespace ci;

namespace {

// Independent oracle: bucket the monomial basis by weight residue.
std::vector<Int> dims_by_enumeration(const std::vector<int>& weights, int p,
                                     int d) {
  const int n = static_cast<int>(weights.size()) - 1;
  std::vector<Int> counts(p, Int(0));
  for (const ExpVec& e : monomial_basis(n, d)) {
    long dot = 0;
    for (int j = 0; j <= n; ++j) dot += 1L * e[j] * weights[j];
    counts[dot % p] += 1;
  }
  return counts;
}

std::vector<long> apply_affine(const std::vector<long>& a, int p, int u,
                               int k) {
  std::vector<long> b(a.size());
  for (int j = 0; j < p; ++j) b[j] = a[(u * j + k) % p];
  return b;
}

}  // namespace

TEST_SUITE("eigencalc") {

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(EigenSpec(4, {0, 1}), std::domain_error);      // not prime
  CHECK_THROWS_AS(EigenSpec(3, {0, 3}), std::domain_error);      // out of range
  CHECK_THROWS_AS(EigenSpec(3, {1, 1, 1}), std::domain_error);   // mu = 1
  CHECK_THROWS_AS(EigenSpec(5, {2}), std::domain_error);         // one variable
  const EigenSpec spec(3, {0, 1, 1, 2});
  CHECK(spec.n() == 3);
  CHECK(spec.mu() == 3);
  CHECK(spec.multiplicities() == std::vector<long>{1, 2, 1});
}

TEST_CASE("pinned eigenspace dimension tables") {
  CHECK(eigenspace_dims(EigenSpec(3, {0, 1, 2}), 3) ==
        std::vector<Int>{Int(4), Int(3), Int(3)});
  CHECK(eigenspace_dims(EigenSpec(2, {0, 0, 1, 1}), 3) ==
        std::vector<Int>{Int(10), Int(10)});
  CHECK(eigenspace_dims(EigenSpec(2, {0, 0, 1, 1}), 2) ==
        std::vector<Int>{Int(6), Int(4)});
  // Degree zero: the constant sits in residue class 0.
  CHECK(eigenspace_dims(EigenSpec(5, {0, 1, 2}), 0) ==
        std::vector<Int>{Int(1), Int(0), Int(0), Int(0), Int(0)});
}

TEST_CASE("dimensions sum to the full form space") {
  const EigenSpec spec(7, {0, 1, 2, 3, 5, 5});
  for (int d = 0; d <= 9; ++d) {
    const auto dims = eigenspace_dims(spec, d);
    const Int total = std::accumulate(dims.begin(), dims.end(), Int(0));
    CHECK(total == dim_forms(spec.n(), d));
  }
}

TEST_CASE("dynamic programming equals monomial enumeration") {
  for (int n = 1; n <= 4; ++n) {
    for (int p : {2, 3, 5}) {
      std::vector<int> w(n + 1, 0);
      const auto walk = [&](auto&& self, int pos, int lo) -> void {
        if (pos == n + 1) {
          if (std::set<int>(w.begin(), w.end()).size() < 2) return;
          const EigenSpec spec(p, w);
          for (int d = 0; d <= 5; ++d)
            CHECK(eigenspace_dims(spec, d) == dims_by_enumeration(w, p, d));
          return;
        }
        for (int v = lo; v < p; ++v) {
          w[pos] = v;
          self(self, pos + 1, v);
        }
      };
      walk(walk, 0, 0);
    }
  }
}

TEST_CASE("wide-integer table agrees with the exact path") {
  const std::vector<long> a{5, 3, 0, 2, 1};  // 11 variables, p = 5
  const auto table = eigen_dims_u64_all_degrees(a, 5, 8);
  for (int d = 0; d <= 8; ++d) {
    const auto exact = eigen_dims_from_multiplicities(a, 5, d);
    REQUIRE(table[d].size() == exact.size());
    for (int w = 0; w < 5; ++w)
      CHECK(Int(static_cast<unsigned long>(table[d][w])) == exact[w]);
  }
}

TEST_CASE("gap bound report") {
  const EigenSpec spec(2, {0, 0, 1, 1});  // n = 3, multiplicities (2,2)
  const auto strict = check_lemma22(spec, 3);
  CHECK(strict.in_range);
  CHECK(strict.strict);
  CHECK(strict.space == 20);
  CHECK(strict.rhs == Rat(8));  // 16 - (4+4)
  CHECK(strict.margins == std::vector<Rat>{Rat(2), Rat(2)});  // gap 10 > 8
  CHECK(strict.holds);

  const auto weak = check_lemma22(spec, 2);
  CHECK_FALSE(weak.strict);
  CHECK(weak.rhs == Rat(4));  // halved at d = 2
  CHECK(weak.margins == std::vector<Rat>{Rat(0), Rat(2)});  // gap 4 >= 4
  CHECK(weak.holds);

  const auto out = check_lemma22(EigenSpec(3, {0, 1, 2}), 3);  // n = 2
  CHECK_FALSE(out.in_range);
  CHECK_FALSE(out.holds);
  CHECK(out.note.find("not judged") != std::string::npos);

  CHECK_THROWS_AS(check_lemma22(spec, 1), std::domain_error);
}

TEST_CASE("maximum bound and recursion report") {
  const EigenSpec spec(2, {0, 0, 0, 1});  // n = 3, multiplicities (3,1)
  const auto rep = check_lemma24(spec, 3);
  CHECK(rep.mu == 2);
  CHECK(rep.max_dim == 13);
  CHECK(rep.argmax_w == 0);
  CHECK(rep.bound == make_rat(105, 8));
  CHECK(rep.bound_holds);
  CHECK(rep.reduced_max == 6);  // multiplicities (2,1)
  CHECK(rep.recursion_rhs == Rat(13));  // 20/2 + 6/2
  CHECK(rep.recursion_holds);
  CHECK(rep.recursion_equality);
}

TEST_CASE("canonical predicates") {
  CHECK(is_rotation_canonical({2, 1, 0}, 3));
  CHECK(is_affine_canonical({2, 1, 0}, 3));
  CHECK_FALSE(is_rotation_canonical({1, 2, 0}, 3));
  CHECK_FALSE(is_affine_canonical({1, 2, 0}, 3));
  // (3,0,1,0,0) vs its reflection (3,0,0,0,1): the affine map u=4 sends it
  // to the lexicographically larger (3,1,0,0,0), so neither is canonical.
  CHECK_FALSE(is_affine_canonical({3, 0, 1, 0, 0}, 5));
  CHECK(is_affine_canonical({3, 1, 0, 0, 0}, 5));
}

TEST_CASE("canonical sweep enumerates one representative per orbit") {
  for (int p : {2, 3, 5}) {
    for (long total = 2; total <= 7; ++total) {
      // Brute-force the canonical set.
      std::set<std::vector<long>> expected;
      std::vector<long> a(p, 0);
      const auto walk = [&](auto&& self, int pos, long remaining) -> void {
        if (pos == p) {
          if (remaining != 0) return;
          const long nonzero =
              std::count_if(a.begin(), a.end(), [](long x) { return x > 0; });
          if (nonzero >= 2 && is_affine_canonical(a, p)) expected.insert(a);
          return;
        }
        for (long v = 0; v <= remaining; ++v) {
          a[pos] = v;
          self(self, pos + 1, remaining - v);
        }
        a[pos] = 0;
      };
      walk(walk, 0, total);

      std::set<std::vector<long>> got;
      for_each_canonical_multiplicity(
          total, p, [&](const std::vector<long>& v) { got.insert(v); });
      CHECK(got == expected);
    }
  }
}

TEST_CASE("verdicts are constant on affine orbits") {
  // Relabeling the residues by j -> u*j + k permutes the eigenspaces, so
  // the dimension multiset and both bound checks are orbit invariants.
  const int p = 5;
  const std::vector<long> a{2, 0, 1, 1, 0};
  const auto base = eigen_dims_from_multiplicities(a, p, 4);
  std::multiset<Int> base_dims(base.begin(), base.end());
  for (int u = 1; u < p; ++u) {
    for (int k = 0; k < p; ++k) {
      const auto b = apply_affine(a, p, u, k);
      const auto dims = eigen_dims_from_multiplicities(b, p, 4);
      CHECK(std::multiset<Int>(dims.begin(), dims.end()) == base_dims);
      const EigenSpec sa(p, weights_from_multiplicities(a));
      const EigenSpec sb(p, weights_from_multiplicities(b));
      CHECK(check_lemma22(sa, 3).holds == check_lemma22(sb, 3).holds);
      const auto ra = check_lemma24(sa, 3);
      const auto rb = check_lemma24(sb, 3);
      CHECK(ra.max_dim == rb.max_dim);
      CHECK(ra.bound == rb.bound);
    }
  }
}

TEST_CASE("weights from multiplicities") {
  CHECK(weights_from_multiplicities({2, 0, 1}) == std::vector<int>{0, 0, 2});
  CHECK(weights_from_multiplicities({0, 3}) == std::vector<int>{1, 1, 1});
}

}  // TEST_SUITE
