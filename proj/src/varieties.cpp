#include "ci/varieties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ci/rng.hpp"

namespace ci {

namespace {

void require_prime_field(const PrimeField& field, const char* who) {
  if (field.ext_degree != 1)
    throw std::invalid_argument(std::string(who) +
                                ": needs the prime field (extension degree 1)");
}

}  // namespace

// --- points and subspaces -------------------------------------------------

std::vector<u64> normalize_point(std::vector<u64> p, u64 q) {
  Fq F(q);
  for (u64& x : p) x %= q;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) {
      const u64 inv = F.inv(p[i]);
      for (u64& x : p) x = x * inv % q;
      return p;
    }
  }
  throw std::invalid_argument("normalize_point: zero vector");
}

PointSet make_point_set(int n, std::vector<std::vector<u64>> pts, u64 q) {
  PointSet s;
  s.n = n;
  for (auto& p : pts) {
    if (static_cast<int>(p.size()) != n + 1)
      throw std::invalid_argument("make_point_set: coordinate length");
    s.points.push_back(normalize_point(std::move(p), q));
  }
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()),
                 s.points.end());
  return s;
}

LinearSubspace make_subspace(int n, Matrix forms, u64 q) {
  for (const Row& r : forms)
    if (static_cast<int>(r.size()) != n + 1)
      throw std::invalid_argument("make_subspace: form length");
  Rref rr = rref_mod(std::move(forms), q);
  LinearSubspace L;
  L.n = n;
  L.forms = std::move(rr.rows);
  return L;
}

LinearSubspace whole_space(int n) {
  LinearSubspace L;
  L.n = n;
  return L;
}

LinearSubspace coordinate_zero_subspace(int n,
                                        const std::vector<int>& zero_coords) {
  LinearSubspace L;
  L.n = n;
  std::set<int> seen;
  for (int i : zero_coords) {
    if (i < 0 || i > n)
      throw std::invalid_argument("coordinate_zero_subspace: index range");
    if (!seen.insert(i).second) continue;
    Row r(n + 1, 0);
    r[i] = 1;
    L.forms.push_back(std::move(r));
  }
  std::sort(L.forms.begin(), L.forms.end(), std::greater<Row>());
  return L;
}

Matrix subspace_point_basis(const LinearSubspace& L, u64 q) {
  if (L.forms.empty()) {
    Matrix id(L.n + 1, Row(L.n + 1, 0));
    for (int i = 0; i <= L.n; ++i) id[i][i] = 1;
    return id;
  }
  return kernel_basis_mod(L.forms, q);
}

u64 projective_point_count(int dim, u64 q) {
  if (dim < 0) return 0;
  u64 c = 0, p = 1;
  for (int i = 0; i <= dim; ++i) {
    c += p;
    p *= q;
  }
  return c;
}

std::vector<std::vector<u64>> enumerate_projective_points(
    const LinearSubspace& L, u64 q) {
  std::vector<std::vector<u64>> out;
  const Matrix basis = subspace_point_basis(L, q);
  const int k = static_cast<int>(basis.size());  // vector-space dimension
  if (k == 0) return out;
  // Leading coefficient 1, zeros before it, free after.
  std::vector<u64> coef(k, 0);
  for (int lead = 0; lead < k; ++lead) {
    std::fill(coef.begin(), coef.end(), 0);
    coef[lead] = 1;
    while (true) {
      std::vector<u64> p(L.n + 1, 0);
      for (int j = lead; j < k; ++j) {
        if (coef[j] == 0) continue;
        for (int t = 0; t <= L.n; ++t)
          p[t] = (p[t] + coef[j] * basis[j][t]) % q;
      }
      out.push_back(normalize_point(std::move(p), q));
      // increment the free digits (positions lead+1..k-1) base q
      int pos = k - 1;
      while (pos > lead && coef[pos] == q - 1) coef[pos--] = 0;
      if (pos == lead) break;
      ++coef[pos];
    }
  }
  return out;
}

// --- strata ----------------------------------------------------------------

std::vector<std::vector<HPoly>> jacobian_matrix(const std::vector<HPoly>& F,
                                                u64 q) {
  std::vector<std::vector<HPoly>> J;
  for (const HPoly& f : F) {
    std::vector<HPoly> row;
    for (int j = 0; j <= f.n; ++j) row.push_back(hp_derivative(f, j, q));
    J.push_back(std::move(row));
  }
  return J;
}

StrataReport strata(const std::vector<HPoly>& F, const LinearSubspace& L,
                    const PrimeField& field, u64 budget_points) {
  require_prime_field(field, "strata");
  const u64 q = field.q;
  if (F.empty()) throw std::invalid_argument("strata: no equations");
  const int n = F[0].n;
  if (L.n != n) throw std::invalid_argument("strata: subspace dimension");
  const int c = static_cast<int>(F.size());

  StrataReport rep;
  rep.points_in_subspace = projective_point_count(L.dim(), q);
  if (rep.points_in_subspace > budget_points) {
    rep.budget_ok = false;
    return rep;
  }
  const auto J = jacobian_matrix(F, q);
  const Matrix basis = subspace_point_basis(L, q);
  std::map<int, std::vector<std::vector<u64>>> buckets;

  for (const auto& p : enumerate_projective_points(L, q)) {
    bool on_x = true;
    for (const HPoly& f : F)
      if (hp_eval(f, p, q) != 0) {
        on_x = false;
        break;
      }
    if (!on_x) continue;
    ++rep.points_on_x;
    // Jacobian restricted to directions inside L.
    Matrix rows;
    for (int i = 0; i < c; ++i) {
      Row r;
      for (const Row& v : basis) {
        u64 s = 0;
        for (int j = 0; j <= n; ++j)
          s = (s + hp_eval(J[i][j], p, q) * v[j]) % q;
        r.push_back(s);
      }
      rows.push_back(std::move(r));
    }
    const int corank = c - static_cast<int>(rank_mod(std::move(rows), q));
    if (corank == 0)
      ++rep.smooth_count;
    else
      buckets[corank].push_back(p);
  }
  for (auto& [r, pts] : buckets)
    rep.singular.emplace(r, make_point_set(n, std::move(pts), q));
  return rep;
}

// --- nodal families --------------------------------------------------------

namespace {

// Monomials of degree d with every exponent <= cap.
std::vector<ExpVec> capped_monomials(int n, int d, int cap) {
  std::vector<ExpVec> out;
  for (const ExpVec& e : monomial_basis(n, d)) {
    if (std::all_of(e.begin(), e.end(), [&](int x) { return x <= cap; }))
      out.push_back(e);
  }
  return out;
}

HPoly random_span_member(int n, int d, const std::vector<ExpVec>& span, u64 q,
                         Rng& rng) {
  while (true) {
    std::vector<Term> terms;
    for (const ExpVec& e : span) {
      const u64 c = rng.below(q);
      if (c) terms.push_back({c, e});
    }
    if (terms.empty()) continue;
    return make_hpoly(n, d, std::move(terms), q);
  }
}

}  // namespace

NodalFamily nodal_ci(const CIType& ci, const PrimeField& field, u64 seed) {
  require_prime_field(field, "nodal_ci");
  const u64 q = field.q;
  const int n = ci.n;
  const int c = ci.c();
  if (ci.degrees.back() < 3)
    throw std::domain_error(
        "nodal_ci: top degree must be at least 3; the span of forms singular "
        "at every coordinate point is empty in degree 2");
  if (n < c + 2)
    throw std::domain_error("nodal_ci: need ambient dimension >= c + 2");

  NodalFamily fam;
  fam.ci = ci;
  fam.seed = seed;
  Rng rng(seed);
  for (int i = 0; i < c; ++i) {
    const int d = ci.degrees[i];
    const bool last = (i == c - 1);
    const int cap = last ? d - 2 : d - 1;
    const auto span = capped_monomials(n, d, cap);
    if (span.empty())
      throw std::domain_error("nodal_ci: empty span for degree " +
                              std::to_string(d));
    fam.span_dims.push_back(static_cast<long>(span.size()));
    fam.F.push_back(random_span_member(n, d, span, q, rng));
  }
  std::vector<std::vector<u64>> pts;
  for (int i = 0; i <= n; ++i) {
    std::vector<u64> p(n + 1, 0);
    p[i] = 1;
    pts.push_back(std::move(p));
  }
  fam.nodes = make_point_set(n, std::move(pts), q);
  return fam;
}

VerifyNodesReport verify_nodes(const std::vector<HPoly>& F,
                               const PointSet& nodes,
                               const PrimeField& field) {
  require_prime_field(field, "verify_nodes");
  const u64 q = field.q;
  if (q == 2)
    throw std::domain_error(
        "verify_nodes: characteristic 2 is rejected (nondegeneracy of a "
        "quadratic form is not a Hessian condition there)");
  if (F.empty()) throw std::invalid_argument("verify_nodes: no equations");
  const int n = F[0].n;
  const int c = static_cast<int>(F.size());
  const auto J = jacobian_matrix(F, q);

  // Second derivatives of each generator, computed once.
  std::vector<std::vector<std::vector<HPoly>>> H(c);
  for (int i = 0; i < c; ++i) {
    H[i].resize(n + 1);
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k)
        H[i][j].push_back(hp_derivative(J[i][j], k, q));
    }
  }

  VerifyNodesReport rep;
  rep.all_ok = true;
  for (const auto& p : nodes.points) {
    NodeCheck chk;
    chk.point = p;
    chk.on_x = std::all_of(F.begin(), F.end(), [&](const HPoly& f) {
      return hp_eval(f, p, q) == 0;
    });
    if (!chk.on_x) {
      ++rep.points_off_x;
      rep.all_ok = false;
      rep.checks.push_back(std::move(chk));
      continue;
    }
    // chart: first nonzero coordinate (normalized points have value 1 there)
    int chart = 0;
    while (p[chart] == 0) ++chart;
    std::vector<int> cols;
    for (int j = 0; j <= n; ++j)
      if (j != chart) cols.push_back(j);

    Matrix jac(c);
    for (int i = 0; i < c; ++i)
      for (int j : cols) jac[i].push_back(hp_eval(J[i][j], p, q));

    Matrix upper(jac.begin(), jac.end() - 1);
    chk.upper_rows_full_rank = rank_mod(upper, q) == c - 1;
    chk.corank_one = rank_mod(jac, q) == c - 1;

    // lambda with dF_c = sum_i lambda_i dF_i on the chart.
    std::optional<Row> lambda;
    if (c == 1) {
      lambda = Row{};  // no lower rows; dF_c itself must vanish
      chk.lambda_solved =
          std::all_of(jac[0].begin(), jac[0].end(), [](u64 x) { return x == 0; });
    } else {
      Matrix lhs(cols.size(), Row(c - 1));
      Row rhs(cols.size());
      for (std::size_t t = 0; t < cols.size(); ++t) {
        for (int i = 0; i + 1 < c; ++i) lhs[t][i] = jac[i][t];
        rhs[t] = jac[c - 1][t];
      }
      lambda = solve_mod(std::move(lhs), std::move(rhs), q);
      chk.lambda_solved = lambda.has_value();
    }

    if (chk.upper_rows_full_rank && chk.corank_one && chk.lambda_solved) {
      // Hessian of G = F_c - sum lambda_i F_i on the chart.
      Matrix hess(cols.size(), Row(cols.size(), 0));
      for (std::size_t a = 0; a < cols.size(); ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) {
          u64 v = hp_eval(H[c - 1][cols[a]][cols[b]], p, q);
          for (int i = 0; i + 1 < c; ++i) {
            const u64 li = (*lambda)[i] % q;
            if (li)
              v = (v + (q - li) * hp_eval(H[i][cols[a]][cols[b]], p, q)) % q;
          }
          hess[a][b] = v;
        }
      }
      // tangent directions of the first c-1 equations in the chart
      Matrix upper_forms;
      for (int i = 0; i + 1 < c; ++i) upper_forms.push_back(jac[i]);
      Matrix tangent = upper_forms.empty()
                           ? Matrix()
                           : kernel_basis_mod(upper_forms, q);
      if (upper_forms.empty()) {
        tangent.assign(cols.size(), Row(cols.size(), 0));
        for (std::size_t i = 0; i < cols.size(); ++i) tangent[i][i] = 1;
      }
      // restricted Hessian M = T H T^t
      Matrix m(tangent.size(), Row(tangent.size(), 0));
      for (std::size_t a = 0; a < tangent.size(); ++a) {
        Row ht(cols.size(), 0);
        for (std::size_t r = 0; r < cols.size(); ++r) {
          u64 s = 0;
          for (std::size_t t = 0; t < cols.size(); ++t)
            s = (s + hess[r][t] * tangent[a][t]) % q;
          ht[r] = s;
        }
        for (std::size_t b = 0; b < tangent.size(); ++b) {
          u64 s = 0;
          for (std::size_t r = 0; r < cols.size(); ++r)
            s = (s + tangent[b][r] * ht[r]) % q;
          m[b][a] = s;
        }
      }
      chk.hessian_nondegenerate =
          rank_mod(m, q) == static_cast<long>(tangent.size());
    }
    chk.ok = chk.on_x && chk.upper_rows_full_rank && chk.corank_one &&
             chk.lambda_solved && chk.hessian_nondegenerate;
    if (!chk.ok) rep.all_ok = false;
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

long h0_oracle(const std::vector<HPoly>& F, int n, int d, u64 q) {
  return GradedQuotient(n, d, F, q).dim();
}

// --- graded cokernel obstruction -------------------------------------------

namespace {

int monomial_weight_class(const ExpVec& e, const std::vector<int>& weights,
                          int p) {
  long s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * weights[i];
  return static_cast<int>(((s % p) + p) % p);
}

}  // namespace

FixedCokernelReport fixed_cokernel_test(const std::vector<HPoly>& F,
                                        const EigenSpec& spec,
                                        const PrimeField& field) {
  require_prime_field(field, "fixed_cokernel_test");
  const u64 q = field.q;
  if (F.empty())
    throw std::invalid_argument("fixed_cokernel_test: no generators");
  const int n = F[0].n;
  if (spec.n() != n)
    throw std::invalid_argument("fixed_cokernel_test: weight count mismatch");
  if (q % static_cast<u64>(spec.p) != 1)
    throw std::domain_error(
        "fixed_cokernel_test: the field has no primitive p-th roots of unity "
        "(need q = 1 mod p)");
  const int c = static_cast<int>(F.size());

  FixedCokernelReport rep;
  for (const HPoly& f : F) {
    if (f.is_zero())
      throw std::invalid_argument("fixed_cokernel_test: zero generator");
    int cls = monomial_weight_class(f.terms[0].exp, spec.weights, spec.p);
    for (const Term& t : f.terms) {
      if (monomial_weight_class(t.exp, spec.weights, spec.p) != cls)
        throw std::invalid_argument(
            "fixed_cokernel_test: generator is not a weight eigenvector");
    }
    rep.xi.push_back(cls);
  }

  // One graded quotient per distinct degree.
  std::map<int, GradedQuotient> quots;
  for (const HPoly& f : F)
    if (!quots.count(f.degree)) quots.emplace(f.degree, GradedQuotient(n, f.degree, F, q));

  std::vector<long> offsets(c + 1, 0);
  for (int i = 0; i < c; ++i) {
    const long dim = quots.at(F[i].degree).dim();
    rep.block_dims.push_back(dim);
    offsets[i + 1] = offsets[i] + dim;
  }
  rep.total_dim = offsets[c];

  Matrix rows;
  const auto J = jacobian_matrix(F, q);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      Row row(rep.total_dim, 0);
      bool nonzero = false;
      for (int i = 0; i < c; ++i) {
        const HPoly& dfij = J[i][j];
        if (dfij.is_zero()) continue;
        ExpVec mono(n + 1, 0);
        mono[k] = 1;
        const HPoly shifted = hp_multiply_monomial(dfij, mono, q);
        Row seg = quots.at(F[i].degree).reduce_poly(shifted);
        for (std::size_t t = 0; t < seg.size(); ++t) {
          if (seg[t]) nonzero = true;
          row[offsets[i] + t] = seg[t];
        }
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  for (int i = 0; i < c; ++i) {
    const GradedQuotient& gq = quots.at(F[i].degree);
    for (const ExpVec& m : gq.monomials()) {
      if (monomial_weight_class(m, spec.weights, spec.p) != rep.xi[i]) continue;
      Row seg = gq.reduce_monomial(m);
      bool nonzero =
          std::any_of(seg.begin(), seg.end(), [](u64 x) { return x != 0; });
      if (!nonzero) continue;
      Row row(rep.total_dim, 0);
      for (std::size_t t = 0; t < seg.size(); ++t)
        row[offsets[i] + t] = seg[t];
      rows.push_back(std::move(row));
    }
  }
  rep.rank = rank_mod(std::move(rows), q);
  rep.shortfall = rep.total_dim - rep.rank;
  rep.shortfall_positive = rep.shortfall > 0;
  rep.two_quadric_pencil_family =
      c == 2 && F[0].degree == 2 && F[1].degree == 2;
  return rep;
}

// --- quadric pencils --------------------------------------------------------

PencilReport pencil_automorphisms(const std::vector<u64>& eigenvalues,
                                  const PrimeField& field) {
  require_prime_field(field, "pencil_automorphisms");
  const u64 q = field.q;
  if (q == 2) throw std::domain_error("pencil_automorphisms: q must be odd");
  const int count = static_cast<int>(eigenvalues.size());
  if (count < 5)
    throw std::invalid_argument(
        "pencil_automorphisms: need at least 5 eigenvalues");
  {
    std::set<u64> seen;
    for (u64 l : eigenvalues)
      if (!seen.insert(l % q).second)
        throw std::invalid_argument(
            "pencil_automorphisms: eigenvalues must be distinct");
  }
  const int n = count - 1;
  Fq F(q);

  PencilReport rep;
  rep.n = n;

  // The two quadrics.
  std::vector<Term> t1, t2;
  for (int i = 0; i < count; ++i) {
    ExpVec e(count, 0);
    e[i] = 2;
    t1.push_back({1, e});
    if (eigenvalues[i] % q) t2.push_back({eigenvalues[i] % q, e});
  }
  const HPoly q1 = make_hpoly(n, 2, t1, q);
  const HPoly q2 = make_hpoly(n, 2, t2, q);

  std::vector<int> ident(count);
  std::iota(ident.begin(), ident.end(), 0);

  rep.sign_maps_preserve_both_forms = true;
  std::set<std::vector<u64>> classes;  // sign vectors up to global sign
  for (u64 mask = 0; mask < (u64(1) << count); ++mask) {
    std::vector<u64> scale(count);
    for (int i = 0; i < count; ++i)
      scale[i] = (mask >> i) & 1 ? q - 1 : 1;
    const HPoly p1 = hp_pullback_scaled_permutation(q1, ident, scale, q);
    const HPoly p2 = hp_pullback_scaled_permutation(q2, ident, scale, q);
    if (!(p1.terms == q1.terms && p2.terms == q2.terms))
      rep.sign_maps_preserve_both_forms = false;
    std::vector<u64> neg(count);
    for (int i = 0; i < count; ++i) neg[i] = F.neg(scale[i]);
    classes.insert(std::min(scale, neg));
  }
  rep.group_order_mod_center = classes.size();
  rep.group_order_ok = classes.size() == (u64(1) << n);

  // Moebius transformations fixing the eigenvalue set.
  // Represent z -> (az+b)/(cz+d) as the matrix [[a,b],[c,d]] over F_q, up to
  // scalars.  The map sending (x0,x1,x2) to (0,1,inf) is
  // z -> k (z-x0)/(z-x2), k = (x1-x2)/(x1-x0).
  auto to_zero_one_inf = [&](u64 x0, u64 x1, u64 x2) -> std::array<u64, 4> {
    const u64 k = F.mul(F.sub(x1, x2), F.inv(F.sub(x1, x0)));
    return {F.mul(k, 1), F.mul(k, F.neg(x0)), 1, F.neg(x2)};
  };
  auto mat_mul = [&](const std::array<u64, 4>& a,
                     const std::array<u64, 4>& b) -> std::array<u64, 4> {
    return {F.add(F.mul(a[0], b[0]), F.mul(a[1], b[2])),
            F.add(F.mul(a[0], b[1]), F.mul(a[1], b[3])),
            F.add(F.mul(a[2], b[0]), F.mul(a[3], b[2])),
            F.add(F.mul(a[2], b[1]), F.mul(a[3], b[3]))};
  };
  auto mat_adj = [&](const std::array<u64, 4>& a) -> std::array<u64, 4> {
    return {a[3], F.neg(a[1]), F.neg(a[2]), a[0]};
  };
  auto normalize_mat = [&](std::array<u64, 4> a) -> std::array<u64, 4> {
    for (u64 x : a)
      if (x) {
        const u64 inv = F.inv(x);
        for (u64& y : a) y = F.mul(y, inv);
        return a;
      }
    return a;
  };

  std::set<u64> lam_set;
  for (u64 l : eigenvalues) lam_set.insert(l % q);
  std::set<std::array<u64, 4>> found;
  const std::array<u64, 4> identity = normalize_mat({1, 0, 0, 1});
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      for (int k = 0; k < count; ++k) {
        if (i == j || j == k || i == k) continue;
        const auto a = to_zero_one_inf(eigenvalues[0] % q, eigenvalues[1] % q,
                                       eigenvalues[2] % q);
        const auto b = to_zero_one_inf(eigenvalues[i] % q, eigenvalues[j] % q,
                                       eigenvalues[k] % q);
        const auto m = normalize_mat(mat_mul(mat_adj(b), a));
        if (m == identity) continue;
        bool fixes = true;
        for (u64 l : lam_set) {
          const u64 den = F.add(F.mul(m[2], l), m[3]);
          if (den == 0) {  // the image is the point at infinity
            fixes = false;
            break;
          }
          const u64 img = F.mul(F.add(F.mul(m[0], l), m[1]), F.inv(den));
          if (!lam_set.count(img)) {
            fixes = false;
            break;
          }
        }
        if (fixes) found.insert(m);
      }
    }
  }
  rep.moebius_symmetries.assign(found.begin(), found.end());
  rep.eigenvalues_general = found.empty();
  return rep;
}

// --- cyclic (2,2) example ---------------------------------------------------

CyclicReport cyclic_22_example(int n, const PrimeField& field,
                               u64 budget_points) {
  if (n < 3) throw std::invalid_argument("cyclic_22_example: need n >= 3");
  const u64 q = field.q;
  if (static_cast<u64>(n) % q == 0)
    throw std::domain_error(
        "cyclic_22_example: n shares a factor with the characteristic");
  if (q == 2) throw std::domain_error("cyclic_22_example: q must be odd");

  const int needed = FqExt::required_extension_degree(q, 2 * n);
  if (needed == 0)
    throw std::domain_error(
        "cyclic_22_example: no extension of practical degree contains a "
        "primitive " +
        std::to_string(2 * n) + "-th root of unity");
  int e = needed;
  if (field.ext_degree > 1) {
    if (field.ext_degree % needed != 0)
      throw std::domain_error(
          "cyclic_22_example: requested extension degree " +
          std::to_string(field.ext_degree) + " lacks the needed order-" +
          std::to_string(2 * n) + " roots (need a multiple of " +
          std::to_string(needed) + ")");
    e = field.ext_degree;
  }
  FqExt K(q, e);
  const auto zeta = K.root_of_unity(2 * static_cast<u64>(n));
  const auto eta = K.mul(zeta, zeta);

  CyclicReport rep;
  rep.n = n;
  rep.q = q;
  rep.ext_degree = e;
  rep.zeta = K.to_string(zeta);
  rep.eta = K.to_string(eta);

  // Diagonal coefficients of D and E.
  std::vector<FqExt::Elt> cd(n, K.one()), ce(n);
  {
    FqExt::Elt pow = K.one();
    for (int i = 0; i < n; ++i) {
      ce[i] = pow;
      pow = K.mul(pow, eta);
    }
  }
  // sigma(z_i) = zeta z_{i+1}: the pullback of sum c_i z_i^2 has coefficient
  // zeta^2 c_{j-1} at z_j^2.
  const auto zeta2 = K.mul(zeta, zeta);
  auto pulled = [&](const std::vector<FqExt::Elt>& c) {
    std::vector<FqExt::Elt> out(n);
    for (int j = 0; j < n; ++j)
      out[j] = K.mul(zeta2, c[(j + n - 1) % n]);
    return out;
  };
  const auto pd = pulled(cd);
  const auto pe = pulled(ce);
  rep.d_scaled_by_eta = true;
  for (int j = 0; j < n; ++j)
    if (!K.eq(pd[j], K.mul(eta, cd[j]))) rep.d_scaled_by_eta = false;
  rep.e_fixed = true;
  for (int j = 0; j < n; ++j)
    if (!K.eq(pe[j], ce[j])) rep.e_fixed = false;

  // Smoothness brute force needs the roots inside the prime field.
  if (e == 1 &&
      projective_point_count(n - 1, q) <= budget_points) {
    std::vector<Term> td, te;
    FqExt::Elt pow = K.one();
    for (int i = 0; i < n; ++i) {
      ExpVec ev(n, 0);
      ev[i] = 2;
      td.push_back({1, ev});
      te.push_back({pow[0], ev});
      pow = K.mul(pow, eta);
    }
    std::vector<HPoly> x = {make_hpoly(n - 1, 2, td, q),
                            make_hpoly(n - 1, 2, te, q)};
    const StrataReport sr =
        strata(x, whole_space(n - 1), PrimeField{q, 1}, budget_points);
    rep.smoothness_checked = sr.budget_ok;
    rep.smooth = sr.budget_ok && sr.singular.empty();
  }
  return rep;
}

// --- chords and projections -------------------------------------------------

ChordReport chord_and_projection(const PointSet& a, const PointSet& b,
                                 const LinearSubspace& center,
                                 const LinearSubspace& target,
                                 const PrimeField& field) {
  require_prime_field(field, "chord_and_projection");
  const u64 q = field.q;
  const int n = a.n;
  if (b.n != n || center.n != n || target.n != n)
    throw std::invalid_argument("chord_and_projection: dimension mismatch");

  ChordReport rep;
  // chord set
  std::vector<std::vector<u64>> chord_pts;
  for (const auto& pa : a.points) {
    for (const auto& pb : b.points) {
      if (pa == pb) {
        chord_pts.push_back(pa);
        continue;
      }
      chord_pts.push_back(pb);
      for (u64 t = 0; t < q; ++t) {
        std::vector<u64> p(n + 1);
        for (int i = 0; i <= n; ++i) p[i] = (pa[i] + t * pb[i]) % q;
        chord_pts.push_back(normalize_point(std::move(p), q));
      }
    }
  }
  rep.chord = make_point_set(n, std::move(chord_pts), q);

  auto dim_estimate = [&](std::size_t cnt) -> int {
    if (cnt == 0) return -1;
    return static_cast<int>(std::lround(std::log(static_cast<double>(cnt)) /
                                        std::log(static_cast<double>(q))));
  };
  rep.chord_dim_estimate = dim_estimate(rep.chord.points.size());

  // projection preconditions
  if (center.dim() + target.dim() != n - 1)
    throw std::invalid_argument(
        "chord_and_projection: center and target dimensions must add to n-1");
  const Matrix vb = subspace_point_basis(center, q);
  const Matrix wb = subspace_point_basis(target, q);
  Matrix stacked = vb;
  stacked.insert(stacked.end(), wb.begin(), wb.end());
  if (rank_mod(stacked, q) != n + 1)
    throw std::invalid_argument(
        "chord_and_projection: center and target intersect");

  // Solve x = V^t alpha + W^t beta; the image point is W^t beta.
  const std::size_t kv = vb.size(), kw = wb.size();
  std::vector<std::vector<u64>> image_pts;
  for (const auto& x : rep.chord.points) {
    Matrix lhs(n + 1, Row(kv + kw, 0));
    for (std::size_t col = 0; col < kv; ++col)
      for (int r = 0; r <= n; ++r) lhs[r][col] = vb[col][r];
    for (std::size_t col = 0; col < kw; ++col)
      for (int r = 0; r <= n; ++r) lhs[r][kv + col] = wb[col][r];
    auto sol = solve_mod(std::move(lhs), x, q);
    if (!sol)
      throw std::runtime_error("chord_and_projection: projection solve failed");
    std::vector<u64> img(n + 1, 0);
    bool zero = true;
    for (std::size_t col = 0; col < kw; ++col) {
      const u64 beta = (*sol)[kv + col];
      if (!beta) continue;
      zero = false;
      for (int r = 0; r <= n; ++r)
        img[r] = (img[r] + beta * wb[col][r]) % q;
    }
    if (zero) {
      ++rep.center_hits;  // the point lies in the center
      continue;
    }
    image_pts.push_back(normalize_point(std::move(img), q));
  }
  rep.image = make_point_set(n, std::move(image_pts), q);
  rep.image_dim_estimate = dim_estimate(rep.image.points.size());
  return rep;
}

// --- Pluecker stabilizers ---------------------------------------------------

namespace {

u64 det_mod(Matrix m, u64 q) {
  const std::size_t k = m.size();
  Fq F(q);
  u64 det = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = F.neg(det);
    }
    det = F.mul(det, m[col][col]);
    const u64 inv = F.inv(m[col][col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const u64 f = F.mul(m[r][col], inv);
      if (!f) continue;
      for (std::size_t t = col; t < k; ++t)
        m[r][t] = F.sub(m[r][t], F.mul(f, m[col][t]));
    }
  }
  return det;
}

// Integer row echelon of the lattice generator matrix; returns pivots.
std::vector<Int> integer_echelon_pivots(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows[0].size();
  std::vector<Int> pivots;
  std::size_t row_start = 0;
  for (std::size_t col = 0; col < ncols && row_start < rows.size(); ++col) {
    // Euclid within the column below row_start.
    while (true) {
      std::size_t best = row_start;
      bool any = false;
      for (std::size_t r = row_start; r < rows.size(); ++r) {
        if (rows[r][col] != 0 &&
            (!any || abs(rows[r][col]) < abs(rows[best][col]))) {
          best = r;
          any = true;
        }
      }
      if (!any) break;
      std::swap(rows[row_start], rows[best]);
      bool reduced_all = true;
      for (std::size_t r = row_start + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Int f = rows[r][col] / rows[row_start][col];
        if (f != 0)
          for (std::size_t t = 0; t < ncols; ++t)
            rows[r][t] -= f * rows[row_start][t];
        if (rows[r][col] != 0) reduced_all = false;
      }
      if (reduced_all) break;
    }
    if (rows[row_start][col] != 0) {
      if (rows[row_start][col] < 0)
        for (std::size_t t = 0; t < ncols; ++t)
          rows[row_start][t] = -rows[row_start][t];
      pivots.push_back(rows[row_start][col]);
      ++row_start;
    }
  }
  return pivots;
}

}  // namespace

PlueckerReport pluecker_stabilizer(int m, int n, const PrimeField& field,
                                   u64 seed, u64 torus_budget) {
  require_prime_field(field, "pluecker_stabilizer");
  const u64 q = field.q;
  if (m < 0 || m >= n)
    throw std::invalid_argument("pluecker_stabilizer: need 0 <= m < n");
  PlueckerReport rep;
  rep.m = m;
  rep.n = n;
  rep.seed = seed;

  Rng rng(seed);
  Matrix a(m + 1, Row(n + 1));
  for (auto& row : a)
    for (u64& x : row) x = rng.below(q);
  if (rank_mod(a, q) != m + 1) {
    rep.note = "random matrix is rank-deficient; stabilizer not evaluated";
    return rep;
  }
  rep.genericity_ok = true;

  // minors over all column subsets of size m+1
  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> idx(m + 1);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      subsets.push_back(idx);
      int pos = m;
      while (pos >= 0 && idx[pos] == n - m + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int t = pos + 1; t <= m; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  std::vector<std::vector<int>> support;
  for (const auto& cols : subsets) {
    Matrix sub(m + 1, Row(m + 1));
    for (int r = 0; r <= m; ++r)
      for (int t = 0; t <= m; ++t) sub[r][t] = a[r][cols[t]];
    if (det_mod(std::move(sub), q) != 0) support.push_back(cols);
  }
  rep.support_size = static_cast<long>(support.size());
  rep.all_minors_nonzero = support.size() == subsets.size();
  if (support.empty()) {
    rep.note = "no nonzero minors";
    return rep;
  }

  // Difference lattice in coordinates relative to e_i - e_n.
  auto indicator = [&](const std::vector<int>& cols) {
    std::vector<Int> v(n + 1, Int(0));
    for (int cidx : cols) v[cidx] = 1;
    return v;
  };
  const std::vector<Int> base = indicator(support[0]);
  std::vector<std::vector<Int>> gens;
  for (std::size_t s = 1; s < support.size(); ++s) {
    std::vector<Int> full = indicator(support[s]);
    std::vector<Int> rel(n);
    for (int t = 0; t < n; ++t) rel[t] = full[t] - base[t];
    gens.push_back(std::move(rel));
  }
  const std::vector<Int> pivots = integer_echelon_pivots(std::move(gens));
  rep.lattice_rank = static_cast<long>(pivots.size());
  rep.lattice_index = 1;
  for (const Int& p : pivots) rep.lattice_index *= p;
  rep.stabilizer_trivial =
      rep.lattice_rank == n && rep.lattice_index == 1;
  if (!rep.stabilizer_trivial && !rep.all_minors_nonzero)
    rep.note = "vanishing minors: genericity violated, stabilizer enlarged";

  // Torus brute force.
  double size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<double>(q - 1);
  if (size <= static_cast<double>(torus_budget)) {
    Fq F(q);
    long stab = 0;
    std::vector<u64> t(n + 1, 1);
    std::vector<u64> digits(n, 1);
    while (true) {
      for (int i = 0; i < n; ++i) t[i + 1] = digits[i];
      u64 common = 0;
      bool fixes = true;
      for (const auto& cols : support) {
        u64 prod = 1;
        for (int cidx : cols) prod = F.mul(prod, t[cidx]);
        if (common == 0)
          common = prod;
        else if (prod != common) {
          fixes = false;
          break;
        }
      }
      if (fixes) ++stab;
      int pos = n - 1;
      while (pos >= 0 && digits[pos] == q - 1) digits[pos--] = 1;
      if (pos < 0) break;
      ++digits[pos];
    }
    rep.enumerated = true;
    rep.enumeration_agrees = (stab == 1) == rep.stabilizer_trivial;
  }
  return rep;
}

const std::map<int, std::vector<u64>>& pencil_example_eigenvalues() {
  static const std::map<int, std::vector<u64>> tuples = {
      {4, {0, 1, 3, 7, 12}},
      {5, {0, 1, 3, 7, 12, 20}},
      {6, {0, 1, 3, 7, 12, 20, 33}},
  };
  return tuples;
}

const std::map<int, u64>& cyclic_example_fields() {
  static const std::map<int, u64> fields = {{3, 7},  {4, 17}, {5, 11},
                                            {6, 13}, {7, 29}, {8, 17}};
  return fields;
}

const std::vector<NodalExampleSpec>& nodal_example_specs() {
  // Seeds chosen so that every coordinate-point node verifies as an
  // ordinary double point and no other rational point is singular.
  static const std::vector<NodalExampleSpec> examples = {
      {CIType(3, {3}), 11, 2},
      {CIType(3, {3}), 101, 1},
      {CIType(4, {2, 3}), 11, 2},
      {CIType(5, {2, 2, 3}), 11, 2},
  };
  return examples;
}

}  // namespace ci
