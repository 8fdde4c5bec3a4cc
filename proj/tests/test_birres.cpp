#include <stdexcept>
#include <vector>

#include "ci/birres.hpp"
#include "ci/rng.hpp"
#include "doctest.h"

using namespace ci;

TEST_SUITE("birres") {

TEST_CASE("map construction and validation") {
  const ScalingMap m = make_scaling_map(5, {0, 1, 3}, {1, 3});
  CHECK(m.blocks() == 3);
  CHECK(block_of(m, 0) == 0);
  CHECK(block_of(m, 1) == 0);
  CHECK(block_of(m, 2) == 1);
  CHECK(block_of(m, 3) == 1);
  CHECK(block_of(m, 4) == 2);
  CHECK(block_of(m, 5) == 2);
  CHECK(block_span(m, 0) == std::pair<int, int>{0, 1});
  CHECK(block_span(m, 1) == std::pair<int, int>{2, 3});
  CHECK(block_span(m, 2) == std::pair<int, int>{4, 5});

  CHECK_THROWS_AS(make_scaling_map(5, {1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_scaling_map(5, {0, 0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_scaling_map(5, {0, 1}, {5}), std::invalid_argument);
  CHECK_THROWS_AS(make_scaling_map(5, {0, 1}, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(make_scaling_map(5, {0, 1, 2}, {3, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_scaling_map(5, {0, 1}, {1, 3}), std::invalid_argument);
}

TEST_CASE("vanishing flags and their duality") {
  const ScalingMap m = make_scaling_map(5, {0, 1, 3}, {1, 3});
  const FlagsReport rep = flags(m);
  CHECK(rep.n == 5);
  CHECK(rep.l == 2);
  CHECK(rep.f_dims == std::vector<int>{5, 3, 1, -1});
  CHECK(rep.g_dims == std::vector<int>{5, 3, 1, -1});
  CHECK(rep.duality_ok);
  CHECK(rep.supports_disjoint);
  CHECK(rep.window_identity_ok);

  // The flag members themselves: f_1 zeroes coordinates 0..1, g_1 zeroes 4..5.
  CHECK(flag_f_subspace(m, 0).dim() == 5);
  CHECK(flag_f_subspace(m, 1).dim() == 3);
  CHECK(flag_f_subspace(m, 3).dim() == -1);
  CHECK(flag_g_subspace(m, 1).dim() == 3);
  const auto f1_pts = enumerate_projective_points(flag_f_subspace(m, 1), 3);
  for (const auto& p : f1_pts) {
    CHECK(p[0] == 0);
    CHECK(p[1] == 0);
  }
  const auto g1_pts = enumerate_projective_points(flag_g_subspace(m, 1), 3);
  for (const auto& p : g1_pts) {
    CHECK(p[4] == 0);
    CHECK(p[5] == 0);
  }

  // An unbalanced one-cut map still satisfies every identity.
  const FlagsReport uneven = flags(make_scaling_map(4, {0, 7}, {0}));
  CHECK(uneven.f_dims == std::vector<int>{4, 3, -1});
  CHECK(uneven.g_dims == std::vector<int>{4, 0, -1});
  CHECK(uneven.duality_ok);
  CHECK(uneven.window_identity_ok);
}

TEST_CASE("arc validation") {
  const Arc a = make_arc({0, 1, 3}, {102, 4, 9}, 101);
  CHECK(a.val == std::vector<long>{0, 1, 3});
  CHECK(a.lead == std::vector<u64>{1, 4, 9});  // leads reduced mod q
  CHECK_THROWS_AS(make_arc({2, 3, 5}, {1, 4, 9}, 101),
                  std::invalid_argument);  // minimal valuation must be 0
  CHECK_THROWS_AS(make_arc({0, -1}, {1, 1}, 101), std::invalid_argument);
  CHECK_THROWS_AS(make_arc({0, 1}, {1, 0}, 101), std::invalid_argument);
  CHECK_THROWS_AS(make_arc({0, 1}, {1}, 101), std::invalid_argument);
}

TEST_CASE("forward limits, strata, ties") {
  const u64 q = 101;
  const ScalingMap m = make_scaling_map(2, {0, 2}, {0});  // blocks [0],[1,2]

  const Arc a = make_arc({0, 1, 3}, {1, 1, 1}, q);
  const ArcLimit la = arc_limit(m, a, Direction::Forward, q);
  CHECK(la.limit == std::vector<u64>{1, 0, 0});
  CHECK(la.stratum == 0);
  CHECK_FALSE(la.tie);

  // Shifted valuations (2, 2, 5): blocks 0 and 1 both achieve the minimum.
  const Arc b = make_arc({2, 0, 3}, {1, 1, 1}, q);
  const ArcLimit lb = arc_limit(m, b, Direction::Forward, q);
  CHECK(lb.limit == std::vector<u64>{1, 1, 0});
  CHECK(lb.tie);
  CHECK(lb.stratum == 1);  // labeled by the largest achieving block

  // An arc deep in the second block limits onto the far flag member.
  const Arc c = make_arc({5, 0, 0}, {1, 2, 3}, q);
  const ArcLimit lc = arc_limit(m, c, Direction::Forward, q);
  CHECK(lc.limit == std::vector<u64>{0, 1, 52});  // (0,2,3) normalized
  CHECK(lc.stratum == 1);
  CHECK_FALSE(lc.tie);
}

TEST_CASE("scaling application round-trips") {
  const ScalingMap m = make_scaling_map(3, {0, 1, 4}, {0, 1});
  const Arc a = make_arc({0, 2, 1, 5}, {3, 1, 4, 1}, 101);
  const Arc fwd = apply_scaling(m, a, Direction::Forward);
  // Valuations gain (0, 1, 4, 4), then renormalize to min 0.
  CHECK(fwd.val == std::vector<long>{0, 3, 5, 9});
  CHECK(fwd.lead == a.lead);
  const Arc back = apply_scaling(m, fwd, Direction::Inverse);
  CHECK(back.val == a.val);
  CHECK(back.lead == a.lead);
}

TEST_CASE("sampled stratum correspondence") {
  const ScalingMap m = make_scaling_map(5, {0, 1, 3}, {1, 3});
  const auto rep = stratum_correspondence(m, 4, 99, 101);
  CHECK(rep.all_ok);
  CHECK(rep.failures.empty());
  CHECK(rep.arcs_checked == 12);  // 4 samples x 3 strata

  const ScalingMap burst = make_scaling_map(2, {0, 7}, {1});
  const auto rep2 = stratum_correspondence(burst, 10, 7, 103);
  CHECK(rep2.all_ok);
  CHECK(rep2.arcs_checked == 20);
}

TEST_CASE("random maps are valid and deterministic") {
  Rng rng_a(31), rng_b(31);
  for (int i = 0; i < 200; ++i) {
    const ScalingMap a = random_scaling_map(12, rng_a);
    const ScalingMap b = random_scaling_map(12, rng_b);
    CHECK(a.n == b.n);
    CHECK(a.mu == b.mu);
    CHECK(a.cuts == b.cuts);

    CHECK(a.n >= 2);
    CHECK(a.n <= 12);
    CHECK(a.mu.front() == 0);
    for (std::size_t j = 1; j < a.mu.size(); ++j)
      CHECK(a.mu[j - 1] < a.mu[j]);
    CHECK(a.mu.size() == a.cuts.size() + 1);
    for (std::size_t j = 0; j < a.cuts.size(); ++j) {
      CHECK(a.cuts[j] >= 0);
      CHECK(a.cuts[j] < a.n);
      if (j > 0) CHECK(a.cuts[j - 1] < a.cuts[j]);
    }
  }
}

}  // TEST_SUITE
