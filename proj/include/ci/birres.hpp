// Weighted-scaling degeneration bookkeeping: the two flags of vanishing
// subspaces attached to a block scaling map, arc limits with their stratum
// labels, and the sampled stratum correspondence between the forward and
// inverse maps.
#pragma once

#include <string>
#include <vector>

#include "ci/fq.hpp"
#include "ci/rng.hpp"
#include "ci/varieties.hpp"

namespace ci {

// Coordinate scaling z_k -> t^{mu_{b(k)}} z_k, where b(k) is the block of k
// under the cut positions: block 0 is [0, a_1], block i is [a_i+1, a_{i+1}],
// block l is [a_l+1, n].
struct ScalingMap {
  int n = 0;                // ambient projective dimension
  std::vector<long> mu;     // strictly increasing exponents, mu[0] == 0
  std::vector<int> cuts;    // 0 <= a_1 < ... < a_l < n
  int blocks() const { return static_cast<int>(mu.size()); }  // l+1
};

ScalingMap make_scaling_map(int n, std::vector<long> mu,
                            std::vector<int> cuts);

int block_of(const ScalingMap& map, int coord);
// Inclusive coordinate span [start, end] of block b.
std::pair<int, int> block_span(const ScalingMap& map, int b);

// Vanishing flags: for 1 <= i <= l the source flag member zeroes the first
// a_i + 1 coordinates, the target flag member zeroes the last n - a_{l+1-i}
// coordinates; index 0 is the whole space and index l+1 the empty set.
LinearSubspace flag_f_subspace(const ScalingMap& map, int i);
LinearSubspace flag_g_subspace(const ScalingMap& map, int i);

struct FlagsReport {
  int n = 0, l = 0;
  std::vector<int> f_dims;  // indices 0..l+1
  std::vector<int> g_dims;
  bool duality_ok = false;          // dim f_i + dim g_{l+1-i} == n-1, i=0..l+1
  bool supports_disjoint = false;   // complementary coordinate supports
  bool window_identity_ok = false;  // consecutive-pair sums equal 2(n-1)
};
FlagsReport flags(const ScalingMap& map);

// Formal one-parameter arc: coordinate k is lead_k t^{val_k} + higher order.
// Normalized arcs have min valuation 0 and nonzero leads.
struct Arc {
  std::vector<long> val;
  std::vector<u64> lead;
};
Arc make_arc(std::vector<long> val, std::vector<u64> lead, u64 q);

enum class Direction { Forward, Inverse };

struct ArcLimit {
  std::vector<u64> limit;  // normalized limit point as t -> 0
  int stratum = 0;
  bool tie = false;        // several blocks achieve the minimal valuation
};

// Limit of the transformed arc as t -> 0, the index of the flag stratum the
// limit lies on, and whether the achieving block was unique.
ArcLimit arc_limit(const ScalingMap& map, const Arc& arc, Direction dir,
                   u64 q);

// The transformed arc itself, renormalized to min valuation 0.
Arc apply_scaling(const ScalingMap& map, const Arc& arc, Direction dir);

struct CorrespondenceReport {
  long arcs_checked = 0;
  bool all_ok = false;
  std::vector<std::string> failures;
};

// Samples arcs with a unique achieving block per stratum and checks:
// the forward limit lands on the predicted target-flag member, the stratum
// label matches, the forward/inverse round trip restores the arc, and the
// commuting-square comparison holds on the block window.
CorrespondenceReport stratum_correspondence(const ScalingMap& map,
                                            int samples_per_stratum, u64 seed,
                                            u64 q);

// Seed-deterministic random map for sweep tests (n in [2, n_limit]).
ScalingMap random_scaling_map(int n_limit, Rng& rng);

}  // namespace ci
