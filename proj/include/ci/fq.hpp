// Prime fields F_q (q < 2^31) and explicit extensions GF(q, e) represented
// as F_q[x] modulo a deterministically chosen irreducible polynomial.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ci {

using u64 = std::uint64_t;

bool is_prime_u64(u64 m);

// Field descriptor accepted by the geometry operations: a prime q and an
// extension degree (1 = the prime field itself).
struct PrimeField {
  u64 q = 101;
  int ext_degree = 1;
};

// Arithmetic in F_q, q an odd-or-even prime below 2^31 (products fit u64).
class Fq {
 public:
  explicit Fq(u64 q);
  u64 q() const { return q_; }
  u64 add(u64 a, u64 b) const { return (a + b) % q_; }
  u64 sub(u64 a, u64 b) const { return (a + q_ - b % q_) % q_; }
  u64 neg(u64 a) const { return (q_ - a % q_) % q_; }
  u64 mul(u64 a, u64 b) const { return (a % q_) * (b % q_) % q_; }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;  // throws on 0
 private:
  u64 q_;
};

// GF(q, e): coefficients listed low degree first, length e.
class FqExt {
 public:
  using Elt = std::vector<u64>;

  // Builds F_q[x]/(f) with f the first monic irreducible of degree e in a
  // deterministic enumeration; requires q^e < 2^63.
  FqExt(u64 q, int e);

  u64 q() const { return base_.q(); }
  int degree() const { return e_; }
  u64 group_order() const { return order_; }  // q^e - 1
  const Elt& modulus() const { return modulus_; }

  Elt zero() const { return Elt(e_, 0); }
  Elt one() const;
  Elt from_base(u64 a) const;
  bool is_zero(const Elt& a) const;
  bool eq(const Elt& a, const Elt& b) const { return a == b; }

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt pow(const Elt& a, u64 k) const;
  Elt inv(const Elt& a) const;  // throws on 0

  // An element of exact multiplicative order k; requires k | q^e - 1.
  Elt root_of_unity(u64 k) const;

  // Multiplicative order of a nonzero element.
  u64 order_of(const Elt& a) const;

  std::string to_string(const Elt& a) const;

  // Smallest e <= e_max with k dividing q^e - 1 (0 if none in range).
  static int required_extension_degree(u64 q, u64 k, int e_max = 24);

 private:
  Fq base_;
  int e_;
  u64 order_;
  Elt modulus_;  // monic, length e_+1
};

// Distinct prime factors of m by trial division (m >= 1).
std::vector<u64> prime_factors(u64 m);

}  // namespace ci
