#include "ci/birres.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ci {

ScalingMap make_scaling_map(int n, std::vector<long> mu,
                            std::vector<int> cuts) {
  if (n < 1) throw std::invalid_argument("ScalingMap: need n >= 1");
  if (cuts.empty()) throw std::invalid_argument("ScalingMap: need l >= 1");
  if (mu.size() != cuts.size() + 1)
    throw std::invalid_argument("ScalingMap: need one exponent per block");
  if (mu[0] != 0)
    throw std::invalid_argument("ScalingMap: exponents start at 0");
  for (std::size_t i = 1; i < mu.size(); ++i)
    if (mu[i] <= mu[i - 1])
      throw std::invalid_argument("ScalingMap: exponents strictly increase");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] < 0 || cuts[i] >= n)
      throw std::invalid_argument("ScalingMap: cuts lie in [0, n)");
    if (i && cuts[i] <= cuts[i - 1])
      throw std::invalid_argument("ScalingMap: cuts strictly increase");
  }
  ScalingMap m;
  m.n = n;
  m.mu = std::move(mu);
  m.cuts = std::move(cuts);
  return m;
}

int block_of(const ScalingMap& map, int coord) {
  if (coord < 0 || coord > map.n)
    throw std::invalid_argument("block_of: coordinate range");
  int b = 0;
  while (b < static_cast<int>(map.cuts.size()) && coord > map.cuts[b]) ++b;
  return b;
}

std::pair<int, int> block_span(const ScalingMap& map, int b) {
  const int l = static_cast<int>(map.cuts.size());
  if (b < 0 || b > l) throw std::invalid_argument("block_span: block range");
  const int start = b == 0 ? 0 : map.cuts[b - 1] + 1;
  const int end = b == l ? map.n : map.cuts[b];
  return {start, end};
}

LinearSubspace flag_f_subspace(const ScalingMap& map, int i) {
  const int l = static_cast<int>(map.cuts.size());
  if (i < 0 || i > l + 1)
    throw std::invalid_argument("flag_f_subspace: index range");
  if (i == 0) return whole_space(map.n);
  std::vector<int> zero;
  const int top = i == l + 1 ? map.n : map.cuts[i - 1];
  for (int k = 0; k <= top; ++k) zero.push_back(k);
  return coordinate_zero_subspace(map.n, zero);
}

LinearSubspace flag_g_subspace(const ScalingMap& map, int i) {
  const int l = static_cast<int>(map.cuts.size());
  if (i < 0 || i > l + 1)
    throw std::invalid_argument("flag_g_subspace: index range");
  if (i == 0) return whole_space(map.n);
  std::vector<int> zero;
  const int bottom = i == l + 1 ? 0 : map.cuts[l - i] + 1;
  for (int k = bottom; k <= map.n; ++k) zero.push_back(k);
  return coordinate_zero_subspace(map.n, zero);
}

FlagsReport flags(const ScalingMap& map) {
  const int l = static_cast<int>(map.cuts.size());
  FlagsReport rep;
  rep.n = map.n;
  rep.l = l;
  for (int i = 0; i <= l + 1; ++i) {
    rep.f_dims.push_back(flag_f_subspace(map, i).dim());
    rep.g_dims.push_back(flag_g_subspace(map, i).dim());
  }
  rep.duality_ok = true;
  for (int i = 0; i <= l + 1; ++i)
    if (rep.f_dims[i] + rep.g_dims[l + 1 - i] != map.n - 1)
      rep.duality_ok = false;
  // Disjoint supports for the proper members: the f member is supported on
  // coordinates after its zero prefix, the dual g member on the prefix.
  rep.supports_disjoint = true;
  for (int i = 1; i <= l; ++i) {
    const int a_i = map.cuts[i - 1];
    // f_i zeroes [0, a_i]; g_{l+1-i} zeroes [a_i + 1, n]: supports disjoint
    // exactly when those zero ranges tile [0, n].
    const int g_index = l + 1 - i;
    const int g_bottom = map.cuts[l - g_index] + 1;
    if (g_bottom != a_i + 1) rep.supports_disjoint = false;
  }
  rep.window_identity_ok = true;
  for (int i = 0; i <= l; ++i) {
    const int sum = rep.f_dims[i] + rep.f_dims[i + 1] + rep.g_dims[l - i] +
                    rep.g_dims[l - i + 1];
    if (sum != 2 * (map.n - 1)) rep.window_identity_ok = false;
  }
  return rep;
}

Arc make_arc(std::vector<long> val, std::vector<u64> lead, u64 q) {
  if (val.empty() || val.size() != lead.size())
    throw std::invalid_argument("Arc: valuation/lead length mismatch");
  long mn = val[0];
  for (long v : val) {
    if (v < 0) throw std::invalid_argument("Arc: valuations must be >= 0");
    mn = std::min(mn, v);
  }
  if (mn != 0)
    throw std::invalid_argument("Arc: minimal valuation must be 0");
  for (u64& c : lead) {
    c %= q;
    if (c == 0) throw std::invalid_argument("Arc: leading coefficients nonzero");
  }
  return Arc{std::move(val), std::move(lead)};
}

namespace {

std::vector<long> shifted_valuations(const ScalingMap& map, const Arc& arc,
                                     Direction dir) {
  if (static_cast<int>(arc.val.size()) != map.n + 1)
    throw std::invalid_argument("arc has wrong coordinate count for the map");
  std::vector<long> s(arc.val.size());
  for (int k = 0; k <= map.n; ++k) {
    const long m = map.mu[block_of(map, k)];
    s[k] = dir == Direction::Forward ? arc.val[k] + m : arc.val[k] - m;
  }
  return s;
}

}  // namespace

ArcLimit arc_limit(const ScalingMap& map, const Arc& arc, Direction dir,
                   u64 q) {
  const std::vector<long> s = shifted_valuations(map, arc, dir);
  const long mn = *std::min_element(s.begin(), s.end());
  ArcLimit out;
  out.limit.assign(map.n + 1, 0);
  for (int k = 0; k <= map.n; ++k)
    if (s[k] == mn) out.limit[k] = arc.lead[k] % q;
  out.limit = normalize_point(std::move(out.limit), q);

  const int l = static_cast<int>(map.cuts.size());
  std::set<int> achievers;
  for (int k = 0; k <= map.n; ++k)
    if (s[k] == mn) achievers.insert(block_of(map, k));
  out.tie = achievers.size() > 1;
  // Forward: the limit lies on the g-flag member indexed from the largest
  // achieving block; inverse: symmetric with the block order reversed.
  out.stratum = dir == Direction::Forward
                    ? *achievers.rbegin()
                    : l - *achievers.begin();
  return out;
}

Arc apply_scaling(const ScalingMap& map, const Arc& arc, Direction dir) {
  std::vector<long> s = shifted_valuations(map, arc, dir);
  const long mn = *std::min_element(s.begin(), s.end());
  for (long& v : s) v -= mn;
  return Arc{std::move(s), arc.lead};
}

CorrespondenceReport stratum_correspondence(const ScalingMap& map,
                                            int samples_per_stratum, u64 seed,
                                            u64 q) {
  const int l = static_cast<int>(map.cuts.size());
  Rng rng(seed);
  CorrespondenceReport rep;
  rep.all_ok = true;
  auto fail = [&](int i, const std::string& what) {
    rep.all_ok = false;
    rep.failures.push_back("stratum " + std::to_string(i) + ": " + what);
  };

  for (int i = 0; i <= l; ++i) {
    const auto [start, end] = block_span(map, i);
    for (int sample = 0; sample < samples_per_stratum; ++sample) {
      // Build an arc whose unique minimal shifted valuation sits in block i.
      std::vector<long> val(map.n + 1, 0);
      std::vector<u64> lead(map.n + 1, 1);
      for (int k = 0; k <= map.n; ++k) {
        const int b = block_of(map, k);
        if (b == i)
          val[k] = static_cast<long>(rng.range(0, 3));
        else if (b < i)
          val[k] = map.mu[i] - map.mu[b] + 1 + static_cast<long>(rng.range(0, 2));
        else
          val[k] = static_cast<long>(rng.range(0, 3));
        lead[k] = 1 + rng.below(q - 1);
      }
      val[start + static_cast<int>(rng.below(
                      static_cast<u64>(end - start + 1)))] = 0;
      long mn = *std::min_element(val.begin(), val.end());
      if (mn != 0) continue;  // cannot happen; guards the arc invariant
      Arc arc = make_arc(val, lead, q);

      const ArcLimit fwd = arc_limit(map, arc, Direction::Forward, q);
      if (fwd.stratum != i) {
        fail(i, "forward stratum " + std::to_string(fwd.stratum));
        continue;
      }
      if (fwd.tie) {
        fail(i, "unexpected tie");
        continue;
      }
      // The limit must lie on the predicted target-flag member.
      const LinearSubspace target = flag_g_subspace(map, l - i);
      bool on_target = true;
      for (const Row& form : target.forms) {
        u64 sdot = 0;
        for (int k = 0; k <= map.n; ++k)
          sdot = (sdot + form[k] * fwd.limit[k]) % q;
        if (sdot) on_target = false;
      }
      if (!on_target) {
        fail(i, "limit misses the target flag member");
        continue;
      }
      // Round trip.
      const Arc back =
          apply_scaling(map, apply_scaling(map, arc, Direction::Forward),
                        Direction::Inverse);
      if (back.val != arc.val || back.lead != arc.lead) {
        fail(i, "round trip altered the arc");
        continue;
      }
      // Commuting square on the block window: the unscaled limit truncated
      // to [0, a_{i+1}] and the forward limit truncated to [a_i+1, n] agree
      // projectively on the window.
      std::vector<u64> unscaled(map.n + 1, 0);
      for (int k = 0; k <= map.n; ++k)
        if (arc.val[k] == 0) unscaled[k] = arc.lead[k];
      std::vector<u64> lhs(end - start + 1, 0), rhs(end - start + 1, 0);
      for (int k = start; k <= end; ++k) {
        lhs[k - start] = unscaled[k];  // truncation keeps [0, end]
        rhs[k - start] = fwd.limit[k];  // truncation keeps [start, n]
      }
      const bool lhs_zero =
          std::all_of(lhs.begin(), lhs.end(), [](u64 x) { return x == 0; });
      const bool rhs_zero =
          std::all_of(rhs.begin(), rhs.end(), [](u64 x) { return x == 0; });
      if (lhs_zero || rhs_zero) {
        fail(i, "window restriction vanished");
        continue;
      }
      const std::vector<u64> lp = normalize_point(lhs, q);
      const std::vector<u64> rp = normalize_point(rhs, q);
      if (lp != rp) {
        fail(i, "window restrictions disagree");
        continue;
      }
      ++rep.arcs_checked;
    }
  }
  return rep;
}

ScalingMap random_scaling_map(int n_limit, Rng& rng) {
  if (n_limit < 2) throw std::invalid_argument("random_scaling_map: n_limit");
  const int n = 2 + static_cast<int>(rng.below(static_cast<u64>(n_limit - 1)));
  const int l_max = n;  // cuts live in [0, n), distinct
  int l = 1 + static_cast<int>(rng.below(static_cast<u64>(std::min(3, l_max))));
  std::set<int> cut_set;
  while (static_cast<int>(cut_set.size()) < l)
    cut_set.insert(static_cast<int>(rng.below(static_cast<u64>(n))));
  std::vector<int> cuts(cut_set.begin(), cut_set.end());
  std::vector<long> mu = {0};
  for (int i = 0; i < l; ++i)
    mu.push_back(mu.back() + 1 + static_cast<long>(rng.range(0, 3)));
  return make_scaling_map(n, std::move(mu), std::move(cuts));
}

}  // namespace ci
