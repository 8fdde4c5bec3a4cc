#include "ci/hpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ci {

namespace {

int total_degree(const ExpVec& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

bool exp_greater(const ExpVec& a, const ExpVec& b) { return a > b; }

}  // namespace

HPoly make_hpoly(int n, int degree, std::vector<Term> terms, u64 q) {
  if (n < 0) throw std::invalid_argument("HPoly: negative dimension");
  if (degree < 0) throw std::invalid_argument("HPoly: negative degree");
  std::map<ExpVec, u64> acc;
  for (Term& t : terms) {
    if (static_cast<int>(t.exp.size()) != n + 1)
      throw std::invalid_argument("HPoly: exponent vector length mismatch");
    for (int e : t.exp)
      if (e < 0) throw std::invalid_argument("HPoly: negative exponent");
    if (total_degree(t.exp) != degree)
      throw std::invalid_argument("HPoly: term degree mismatch");
    acc[t.exp] = (acc[t.exp] + t.coeff) % q;
  }
  HPoly out;
  out.n = n;
  out.degree = degree;
  for (auto& [e, c] : acc)
    if (c % q != 0) out.terms.push_back({c % q, e});
  std::sort(out.terms.begin(), out.terms.end(),
            [](const Term& a, const Term& b) { return exp_greater(a.exp, b.exp); });
  return out;
}

HPoly hp_add(const HPoly& a, const HPoly& b, u64 q) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.n != b.n || a.degree != b.degree)
    throw std::invalid_argument("hp_add: degree or dimension mismatch");
  std::vector<Term> terms = a.terms;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return make_hpoly(a.n, a.degree, std::move(terms), q);
}

HPoly hp_scale(const HPoly& a, u64 s, u64 q) {
  s %= q;
  HPoly out;
  out.n = a.n;
  out.degree = a.degree;
  if (s == 0) return out;
  out.terms = a.terms;
  for (Term& t : out.terms) t.coeff = t.coeff * s % q;
  out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                 [](const Term& t) { return t.coeff == 0; }),
                  out.terms.end());
  return out;
}

HPoly hp_mul(const HPoly& a, const HPoly& b, u64 q) {
  if (a.n != b.n) throw std::invalid_argument("hp_mul: dimension mismatch");
  std::vector<Term> terms;
  terms.reserve(a.terms.size() * b.terms.size());
  for (const Term& ta : a.terms) {
    for (const Term& tb : b.terms) {
      Term t;
      t.coeff = ta.coeff * tb.coeff % q;
      t.exp.resize(ta.exp.size());
      for (std::size_t i = 0; i < t.exp.size(); ++i)
        t.exp[i] = ta.exp[i] + tb.exp[i];
      terms.push_back(std::move(t));
    }
  }
  return make_hpoly(a.n, a.degree + b.degree, std::move(terms), q);
}

HPoly hp_derivative(const HPoly& a, int j, u64 q) {
  if (j < 0 || j > a.n) throw std::invalid_argument("hp_derivative: bad index");
  std::vector<Term> terms;
  for (const Term& t : a.terms) {
    if (t.exp[j] == 0) continue;
    Term d;
    d.coeff = t.coeff * (static_cast<u64>(t.exp[j]) % q) % q;
    if (d.coeff == 0) continue;  // exponent divisible by the characteristic
    d.exp = t.exp;
    d.exp[j] -= 1;
    terms.push_back(std::move(d));
  }
  return make_hpoly(a.n, a.degree > 0 ? a.degree - 1 : 0, std::move(terms), q);
}

u64 hp_eval(const HPoly& a, const std::vector<u64>& point, u64 q) {
  if (static_cast<int>(point.size()) != a.n + 1)
    throw std::invalid_argument("hp_eval: point length mismatch");
  Fq F(q);
  u64 acc = 0;
  for (const Term& t : a.terms) {
    u64 v = t.coeff % q;
    for (int i = 0; i <= a.n && v; ++i)
      if (t.exp[i]) v = v * F.pow(point[i], static_cast<u64>(t.exp[i])) % q;
    acc = (acc + v) % q;
  }
  return acc;
}

HPoly hp_pullback_scaled_permutation(const HPoly& a,
                                     const std::vector<int>& perm,
                                     const std::vector<u64>& scale, u64 q) {
  if (static_cast<int>(perm.size()) != a.n + 1 ||
      static_cast<int>(scale.size()) != a.n + 1)
    throw std::invalid_argument("hp_pullback: permutation length mismatch");
  Fq F(q);
  std::vector<Term> terms;
  for (const Term& t : a.terms) {
    Term s;
    s.coeff = t.coeff;
    s.exp.assign(a.n + 1, 0);
    for (int i = 0; i <= a.n; ++i) {
      if (t.exp[i] == 0) continue;
      s.coeff = s.coeff * F.pow(scale[i], static_cast<u64>(t.exp[i])) % q;
      s.exp[perm[i]] += t.exp[i];
    }
    if (s.coeff) terms.push_back(std::move(s));
  }
  return make_hpoly(a.n, a.degree, std::move(terms), q);
}

HPoly hp_multiply_monomial(const HPoly& a, const ExpVec& mono, u64 q) {
  if (static_cast<int>(mono.size()) != a.n + 1)
    throw std::invalid_argument("hp_multiply_monomial: length mismatch");
  std::vector<Term> terms = a.terms;
  int extra = total_degree(mono);
  for (Term& t : terms)
    for (std::size_t i = 0; i < t.exp.size(); ++i) t.exp[i] += mono[i];
  return make_hpoly(a.n, a.degree + extra, std::move(terms), q);
}

std::string hp_to_string(const HPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const Term& t : a.terms) {
    if (!first) s += " + ";
    first = false;
    std::string mono;
    for (int i = 0; i <= a.n; ++i) {
      if (t.exp[i] == 0) continue;
      mono += "*z" + std::to_string(i);
      if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
    }
    if (mono.empty())
      s += std::to_string(t.coeff);
    else
      s += std::to_string(t.coeff) + mono;
  }
  return s;
}

std::vector<ExpVec> monomial_basis(int n, int d) {
  std::vector<ExpVec> out;
  if (n < 0 || d < 0) return out;
  ExpVec cur(n + 1, 0);
  // Recursive enumeration in descending lexicographic order.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n) {
      cur[pos] = remaining;
      out.push_back(cur);
      cur[pos] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, remaining - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, d);
  return out;
}

long monomial_index(const std::vector<ExpVec>& basis, const ExpVec& e) {
  auto it = std::lower_bound(basis.begin(), basis.end(), e,
                             [](const ExpVec& a, const ExpVec& b) { return a > b; });
  if (it == basis.end() || *it != e)
    throw std::invalid_argument("monomial_index: monomial not in basis");
  return static_cast<long>(it - basis.begin());
}

Row coefficient_vector(const HPoly& a, const std::vector<ExpVec>& basis) {
  Row v(basis.size(), 0);
  for (const Term& t : a.terms)
    v[static_cast<std::size_t>(monomial_index(basis, t.exp))] = t.coeff;
  return v;
}

GradedQuotient::GradedQuotient(int n, int t, const std::vector<HPoly>& gens,
                               u64 q)
    : n_(n), t_(t), q_(q), basis_(monomial_basis(n, t)) {
  Matrix rows;
  for (const HPoly& g : gens) {
    if (g.is_zero()) continue;
    if (g.n != n)
      throw std::invalid_argument("GradedQuotient: generator dimension");
    if (g.degree > t) continue;
    for (const ExpVec& m : monomial_basis(n, t - g.degree)) {
      HPoly shifted = hp_multiply_monomial(g, m, q);
      rows.push_back(coefficient_vector(shifted, basis_));
    }
  }
  ideal_rref_ = rref_mod(std::move(rows), q);
  std::vector<bool> is_pivot(basis_.size(), false);
  for (long pc : ideal_rref_.pivot_cols)
    is_pivot[static_cast<std::size_t>(pc)] = true;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!is_pivot[i]) free_cols_.push_back(static_cast<long>(i));
  dim_ = static_cast<long>(free_cols_.size());
}

Row GradedQuotient::reduce(Row coeffs) const {
  if (coeffs.size() != basis_.size())
    throw std::invalid_argument("GradedQuotient::reduce: length mismatch");
  reduce_against(coeffs, ideal_rref_, q_);
  Row out(free_cols_.size());
  for (std::size_t i = 0; i < free_cols_.size(); ++i)
    out[i] = coeffs[static_cast<std::size_t>(free_cols_[i])];
  return out;
}

Row GradedQuotient::reduce_monomial(const ExpVec& e) const {
  Row v(basis_.size(), 0);
  v[static_cast<std::size_t>(monomial_index(basis_, e))] = 1;
  return reduce(std::move(v));
}

Row GradedQuotient::reduce_poly(const HPoly& a) const {
  if (a.is_zero()) return Row(free_cols_.size(), 0);
  if (a.degree != t_)
    throw std::invalid_argument("GradedQuotient::reduce_poly: wrong degree");
  return reduce(coefficient_vector(a, basis_));
}

}  // namespace ci
