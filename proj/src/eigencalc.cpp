#include "ci/eigencalc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ci/combinat.hpp"

namespace ci {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

EigenSpec::EigenSpec(int p_, std::vector<int> weights_)
    : p(p_), weights(std::move(weights_)) {
  if (!is_prime(p)) throw std::domain_error("EigenSpec: p must be prime");
  if (weights.size() < 2)
    throw std::domain_error("EigenSpec: need at least two variables");
  for (int w : weights)
    if (w < 0 || w >= p)
      throw std::domain_error("EigenSpec: weights must lie in [0, p)");
  if (mu() < 2)
    throw std::domain_error(
        "EigenSpec: need at least two distinct weight classes (a nontrivial "
        "diagonal action)");
}

std::vector<long> EigenSpec::multiplicities() const {
  std::vector<long> a(p, 0);
  for (int w : weights) ++a[w];
  return a;
}

int EigenSpec::mu() const {
  auto a = multiplicities();
  return static_cast<int>(std::count_if(a.begin(), a.end(),
                                        [](long x) { return x > 0; }));
}

std::string EigenSpec::to_string() const {
  std::ostringstream os;
  os << "p=" << p << " weights=(";
  for (size_t i = 0; i < weights.size(); ++i)
    os << (i ? "," : "") << weights[i];
  os << ")";
  return os.str();
}

// Core DP: process one residue class at a time. Adding a_j variables of
// residue j contributes t to the degree and t*j to the weight, in
// C(t + a_j - 1, a_j - 1) ways (stars and bars).
template <typename T>
static std::vector<std::vector<T>> dp_all_degrees(const std::vector<long>& a,
                                                  int p, int d_max) {
  std::vector<std::vector<T>> table(d_max + 1, std::vector<T>(p, T(0)));
  table[0][0] = T(1);
  for (int j = 0; j < p; ++j) {
    const long aj = a[j];
    if (aj == 0) continue;
    // ways[t] = C(t + aj - 1, aj - 1)
    std::vector<T> ways(d_max + 1);
    for (int t = 0; t <= d_max; ++t) {
      if constexpr (std::is_same_v<T, Int>) {
        ways[t] = binom(t + aj - 1, aj - 1);
      } else {
        ways[t] = static_cast<T>(binom(t + aj - 1, aj - 1).get_ui());
      }
    }
    std::vector<std::vector<T>> next(d_max + 1, std::vector<T>(p, T(0)));
    for (int deg = 0; deg <= d_max; ++deg)
      for (int w = 0; w < p; ++w) {
        const T& cur = table[deg][w];
        if (cur == T(0)) continue;
        for (int t = 0; deg + t <= d_max; ++t) {
          const int w2 = static_cast<int>((w + 1LL * t * j) % p);
          next[deg + t][w2] += cur * ways[t];
        }
      }
    table.swap(next);
  }
  return table;
}

std::vector<Int> eigen_dims_from_multiplicities(const std::vector<long>& a,
                                                int p, int d) {
  if (d < 0) throw std::domain_error("eigenspace dims: need d >= 0");
  // Every DP entry is a monomial count bounded by C(total-1+d, d); when that
  // fits comfortably in 64 bits the u64 table is exact and much faster.
  const long total = std::accumulate(a.begin(), a.end(), 0L);
  static const Int kU64Cap = Int(1) << 62;
  if (total >= 1 && binom(total - 1 + d, d) < kU64Cap) {
    const auto fast = dp_all_degrees<std::uint64_t>(a, p, d)[d];
    std::vector<Int> out;
    out.reserve(fast.size());
    for (std::uint64_t v : fast) out.push_back(Int(static_cast<unsigned long>(v)));
    return out;
  }
  return dp_all_degrees<Int>(a, p, d)[d];
}

std::vector<std::vector<std::uint64_t>> eigen_dims_u64_all_degrees(
    const std::vector<long>& a, int p, int d_max) {
  return dp_all_degrees<std::uint64_t>(a, p, d_max);
}

std::vector<Int> eigenspace_dims(const EigenSpec& spec, int d) {
  return eigen_dims_from_multiplicities(spec.multiplicities(), spec.p, d);
}

Lemma22Report check_lemma22(const EigenSpec& spec, int d) {
  if (d < 2) throw std::domain_error("check_lemma22: need d >= 2");
  Lemma22Report rep;
  rep.n = spec.n();
  rep.d = d;
  rep.p = spec.p;
  rep.space = dim_forms(rep.n, d);
  rep.dims = eigenspace_dims(spec, d);

  const auto a = spec.multiplicities();
  Int sum_sq(0);
  for (long aj : a) sum_sq += Int(aj) * aj;
  const Int gap_rhs = Int(rep.n + 1) * (rep.n + 1) - sum_sq;

  rep.in_range = rep.n >= 3;
  rep.strict = d >= 3;
  rep.rhs = rep.strict ? Rat(gap_rhs) : Rat(gap_rhs) / 2;
  for (const Int& dim_w : rep.dims)
    rep.margins.push_back(Rat(rep.space - dim_w) - rep.rhs);

  if (!rep.in_range) {
    rep.holds = false;
    rep.note = "out-of-range: the bound requires n >= 3; not judged";
    return rep;
  }
  rep.holds = std::all_of(rep.margins.begin(), rep.margins.end(),
                          [&](const Rat& m) {
                            return rep.strict ? m > 0 : m >= 0;
                          });
  return rep;
}

Lemma24Report check_lemma24(const EigenSpec& spec, int d) {
  if (d < 1) throw std::domain_error("check_lemma24: need d >= 1");
  Lemma24Report rep;
  rep.n = spec.n();
  rep.d = d;
  rep.p = spec.p;
  rep.mu = spec.mu();

  const auto dims = eigenspace_dims(spec, d);
  rep.max_dim = dims[0];
  rep.argmax_w = 0;
  for (int w = 1; w < spec.p; ++w)
    if (dims[w] > rep.max_dim) {
      rep.max_dim = dims[w];
      rep.argmax_w = w;
    }

  const int n = rep.n, mu = rep.mu;
  // Closed-form bound: geometric-decay partial sum plus a tail term.
  Rat bound(0);
  Int mu_pow(mu);  // mu^{k+1}
  Int num_pow(1);  // (mu-1)^k
  for (int k = 0; k <= n + 1 - mu; ++k) {
    bound += make_rat(num_pow, mu_pow) * Rat(binom(n + d - k, d));
    num_pow *= (mu - 1);
    mu_pow *= mu;
  }
  // After the loop num_pow = (mu-1)^{n+2-mu}, so recompute the tail factors.
  Int tail_num(1), tail_den(1);
  for (int k = 0; k < n + 1 - mu; ++k) tail_num *= (mu - 1);
  for (int k = 0; k < n + 2 - mu; ++k) tail_den *= mu;
  bound += make_rat(tail_num, tail_den) * Rat(binom(d + mu - 1, d + 1));
  rep.bound = bound;
  rep.bound_holds = Rat(rep.max_dim) <= bound;

  // Recursion: decrement a maximal multiplicity class and recompute.
  auto a = spec.multiplicities();
  const auto it = std::max_element(a.begin(), a.end());
  *it -= 1;
  const auto reduced = eigen_dims_from_multiplicities(a, spec.p, d);
  rep.reduced_max = *std::max_element(reduced.begin(), reduced.end());
  rep.recursion_rhs = make_rat(1, mu) * Rat(dim_forms(n, d)) +
                      make_rat(mu - 1, mu) * Rat(rep.reduced_max);
  rep.recursion_holds = Rat(rep.max_dim) <= rep.recursion_rhs;
  rep.recursion_equality = Rat(rep.max_dim) == rep.recursion_rhs;
  return rep;
}

bool is_rotation_canonical(const std::vector<long>& a, int p) {
  for (int k = 1; k < p; ++k) {
    for (int j = 0; j < p; ++j) {
      const long b = a[(j + k) % p];
      if (b > a[j]) return false;
      if (b < a[j]) break;
    }
  }
  return true;
}

bool is_affine_canonical(const std::vector<long>& a, int p) {
  for (int u = 1; u < p; ++u) {
    for (int k = 0; k < p; ++k) {
      if (u == 1 && k == 0) continue;
      for (int j = 0; j < p; ++j) {
        const long b = a[static_cast<int>((1LL * u * j + k) % p)];
        if (b > a[j]) return false;
        if (b < a[j]) break;
      }
    }
  }
  return true;
}

void for_each_canonical_multiplicity(
    long total, int p,
    const std::function<void(const std::vector<long>&)>& fn) {
  if (total < 2 || p < 2) return;
  std::vector<long> a(p, 0);
  // a[0] is the maximum entry of any canonical vector (otherwise the
  // rotation starting at an argmax would be lexicographically larger), and
  // a[0] < total keeps a second class nonzero (mu >= 2).
  const auto walk = [&](auto&& self, int pos, long remaining) -> void {
    if (pos == p) {
      if (remaining != 0) return;
      if (!is_rotation_canonical(a, p)) return;  // cheap reject first
      if (!is_affine_canonical(a, p)) return;
      fn(a);
      return;
    }
    const long cap = pos == 0 ? total - 1 : std::min(a[0], remaining);
    const long slots_after = p - pos - 1;
    for (long v = cap; v >= 0; --v) {
      if (pos == 0 && v * (p - 1) < total - v) break;  // rest cannot absorb
      if (pos > 0 && v + slots_after * a[0] < remaining) break;
      a[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    a[pos] = 0;
  };
  walk(walk, 0, total);
}

std::vector<int> weights_from_multiplicities(const std::vector<long>& a) {
  std::vector<int> w;
  for (int j = 0; j < static_cast<int>(a.size()); ++j)
    for (long t = 0; t < a[j]; ++t) w.push_back(j);
  return w;
}

}  // namespace ci
