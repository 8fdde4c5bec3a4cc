#include "ci/fq.hpp"

#include <algorithm>
#include <stdexcept>

namespace ci {

bool is_prime_u64(u64 m) {
  if (m < 2) return false;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 m) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

Fq::Fq(u64 q) : q_(q) {
  if (!is_prime_u64(q)) throw std::invalid_argument("Fq: q must be prime");
  if (q >= (u64(1) << 31))
    throw std::invalid_argument("Fq: q must be below 2^31");
}

u64 Fq::pow(u64 a, u64 e) const {
  a %= q_;
  u64 r = 1;
  while (e) {
    if (e & 1) r = r * a % q_;
    a = a * a % q_;
    e >>= 1;
  }
  return r;
}

u64 Fq::inv(u64 a) const {
  a %= q_;
  if (a == 0) throw std::domain_error("Fq: inverse of zero");
  return pow(a, q_ - 2);
}

namespace {

// Dense polynomial helpers over F_q; coefficients low degree first.
using Poly = std::vector<u64>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Fq& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % F.q();
  }
  trim(c);
  return c;
}

// a mod f, f monic.
Poly poly_mod(const Fq& F, Poly a, const Poly& f) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const u64 lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    if (lead != 0) {
      for (std::size_t i = 0; i < df; ++i)
        a[shift + i] = F.sub(a[shift + i], F.mul(lead, f[i]));
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Fq& F, const Poly& a, const Poly& b, const Poly& f) {
  return poly_mod(F, poly_mul(F, a, b), f);
}

Poly poly_powmod(const Fq& F, Poly base, u64 e, const Poly& f) {
  Poly r = {1};
  base = poly_mod(F, std::move(base), f);
  while (e) {
    if (e & 1) r = poly_mulmod(F, r, base, f);
    base = poly_mulmod(F, base, base, f);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(const Fq& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // reduce a mod b after making b monic
    const u64 lead_inv = F.inv(b.back());
    for (u64& c : b) c = F.mul(c, lead_inv);
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: x^(q^e) == x mod f, and gcd(x^(q^(e/r)) - x, f) = 1 for
// every prime r dividing e.
bool is_irreducible(const Fq& F, const Poly& f) {
  const int e = static_cast<int>(f.size()) - 1;
  u64 qe = 1;
  for (int i = 0; i < e; ++i) qe *= F.q();
  const Poly x = {0, 1};
  Poly xq = poly_powmod(F, x, qe, f);
  Poly diff = xq;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = F.sub(diff[1], 1);
  trim(diff);
  if (!diff.empty()) return false;
  for (u64 r : prime_factors(static_cast<u64>(e))) {
    u64 qer = 1;
    for (u64 i = 0; i < static_cast<u64>(e) / r; ++i) qer *= F.q();
    Poly y = poly_powmod(F, x, qer, f);
    y.resize(std::max<std::size_t>(y.size(), 2), 0);
    y[1] = F.sub(y[1], 1);
    trim(y);
    Poly g = poly_gcd(F, f, y);
    if (!(g.size() == 1)) return false;  // nonconstant common factor
  }
  return true;
}

}  // namespace

FqExt::FqExt(u64 q, int e) : base_(q), e_(e) {
  if (e < 1 || e > 24) throw std::invalid_argument("FqExt: degree out of range");
  long double size = 1;
  order_ = 1;
  for (int i = 0; i < e; ++i) {
    size *= static_cast<long double>(q);
    order_ *= q;
  }
  if (size >= 9.2e18L)
    throw std::invalid_argument("FqExt: q^e too large for 64-bit order");
  order_ -= 1;
  if (e == 1) {
    modulus_ = {0, 1};  // x
    return;
  }
  // Deterministic search: f = x^e + (lower coefficients = digits of t).
  for (u64 t = 1;; ++t) {
    Poly f(e + 1, 0);
    f[e] = 1;
    u64 v = t;
    for (int i = 0; i < e && v; ++i) {
      f[i] = v % q;
      v /= q;
    }
    if (v) throw std::runtime_error("FqExt: no irreducible polynomial found");
    if (is_irreducible(base_, f)) {
      modulus_ = std::move(f);
      return;
    }
  }
}

FqExt::Elt FqExt::one() const {
  Elt r(e_, 0);
  r[0] = 1;
  return r;
}

FqExt::Elt FqExt::from_base(u64 a) const {
  Elt r(e_, 0);
  r[0] = a % q();
  return r;
}

bool FqExt::is_zero(const Elt& a) const {
  return std::all_of(a.begin(), a.end(), [](u64 c) { return c == 0; });
}

FqExt::Elt FqExt::add(const Elt& a, const Elt& b) const {
  Elt r(e_);
  for (int i = 0; i < e_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

FqExt::Elt FqExt::sub(const Elt& a, const Elt& b) const {
  Elt r(e_);
  for (int i = 0; i < e_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

FqExt::Elt FqExt::mul(const Elt& a, const Elt& b) const {
  if (e_ == 1) return {base_.mul(a[0], b[0])};
  Poly r = poly_mod(base_, poly_mul(base_, a, b), modulus_);
  r.resize(e_, 0);
  return r;
}

FqExt::Elt FqExt::pow(const Elt& a, u64 k) const {
  Elt r = one();
  Elt base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

FqExt::Elt FqExt::inv(const Elt& a) const {
  if (is_zero(a)) throw std::domain_error("FqExt: inverse of zero");
  return pow(a, order_ - 1);
}

u64 FqExt::order_of(const Elt& a) const {
  if (is_zero(a)) throw std::domain_error("FqExt: order of zero");
  u64 o = order_;
  for (u64 r : prime_factors(order_)) {
    while (o % r == 0 && eq(pow(a, o / r), one())) o /= r;
  }
  return o;
}

FqExt::Elt FqExt::root_of_unity(u64 k) const {
  if (k == 0 || order_ % k != 0)
    throw std::domain_error("FqExt: group order " + std::to_string(order_) +
                            " has no subgroup of order " + std::to_string(k));
  if (k == 1) return one();
  const u64 m = order_ / k;
  const std::vector<u64> kfac = prime_factors(k);
  // Deterministic sweep over nonzero elements encoded base q.
  for (u64 t = 1; t <= order_; ++t) {
    Elt g(e_, 0);
    u64 v = t;
    for (int i = 0; i < e_ && v; ++i) {
      g[i] = v % q();
      v /= q();
    }
    if (is_zero(g)) continue;
    Elt y = pow(g, m);
    if (eq(y, one())) continue;
    bool exact = true;
    for (u64 r : kfac) {
      if (eq(pow(y, k / r), one())) {
        exact = false;
        break;
      }
    }
    if (exact) return y;
  }
  throw std::runtime_error("FqExt: root-of-unity search failed");
}

std::string FqExt::to_string(const Elt& a) const {
  std::string s = "[";
  for (int i = 0; i < e_; ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "]";
}

int FqExt::required_extension_degree(u64 q, u64 k, int e_max) {
  if (k == 0) return 0;
  u64 pow_mod_k = 1 % k;
  for (int e = 1; e <= e_max; ++e) {
    pow_mod_k = (pow_mod_k * (q % k)) % k;
    if (pow_mod_k == 1 % k) return e;
    // Guard: q^e itself must stay within u64 for field construction.
  }
  return 0;
}

}  // namespace ci
