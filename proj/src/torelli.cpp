#include "ci/torelli.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "ci/hpoly.hpp"
#include "ci/kernels.hpp"
#include "ci/linalg.hpp"
#include "ci/rational.hpp"
#include "ci/rng.hpp"

namespace ci {

namespace {

void validate_spot(const CohomologySpot& s) {
  if (s.r < 1) throw std::domain_error("cohomology spot: r must be at least 1");
  if (s.a < 0 || s.a > s.r)
    throw std::domain_error("cohomology spot: need 0 <= a <= r");
  if (s.b < 0 || s.b > s.r)
    throw std::domain_error("cohomology spot: need 0 <= b <= r");
}

// All length-`parts` vectors of nonnegative integers summing to `total`,
// in lexicographic order (first coordinate decreasing last).
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == parts - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

long long dot_degrees(const std::vector<int>& e, const std::vector<int>& d) {
  long long s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += 1LL * e[i] * d[i];
  return s;
}

// dim (S/I)_t for I generated by a regular sequence of the given degrees in
// n+1 variables, by inclusion-exclusion over the Koszul resolution.
long sieve_dim(int n, const std::vector<int>& degrees, long long t) {
  if (t < 0) return 0;
  const int c = static_cast<int>(degrees.size());
  Int total = 0;
  for (unsigned mask = 0; mask < (1u << c); ++mask) {
    long long drop = 0;
    int bits = 0;
    for (int i = 0; i < c; ++i)
      if (mask >> i & 1) {
        drop += degrees[static_cast<std::size_t>(i)];
        ++bits;
      }
    const Int term = binom(static_cast<long>(n + t - drop), n);
    total += (bits % 2 == 0) ? term : -term;
  }
  if (total < 0)
    throw std::logic_error("graded sieve produced a negative dimension");
  return static_cast<long>(total.get_si());
}

// Deterministic member of the family: one diagonal form of each degree with
// nonzero coefficients plus two seeded perturbation monomials per equation.
std::vector<HPoly> member_polys(const CIType& ci, u64 q, u64 seed) {
  Rng rng(seed);
  const int n = ci.n;
  std::vector<HPoly> out;
  for (int i = 0; i < ci.c(); ++i) {
    const int d = ci.degrees[static_cast<std::size_t>(i)];
    std::vector<Term> terms;
    for (int j = 0; j <= n; ++j) {
      ExpVec e(static_cast<std::size_t>(n + 1), 0);
      e[static_cast<std::size_t>(j)] = d;
      terms.push_back(Term{1 + rng.below(q - 1), e});
    }
    for (int extra = 0; extra < 2; ++extra) {
      ExpVec e(static_cast<std::size_t>(n + 1), 0);
      for (int k = 0; k < d; ++k)
        e[static_cast<std::size_t>(rng.below(static_cast<u64>(n + 1)))] += 1;
      terms.push_back(Term{1 + rng.below(q - 1), e});
    }
    out.push_back(make_hpoly(n, d, std::move(terms), q));
  }
  return out;
}

// Row-space accumulator: forward Gaussian elimination with one stored row
// per leading column, no back-substitution (rank only needs independence).
class RankAccumulator {
 public:
  RankAccumulator(std::size_t cols, u64 q)
      : cols_(cols), q_(q), fq_(q), pivot_of_col_(cols, -1) {}

  std::size_t rank() const { return rows_.size(); }

  // Adds the row to the span; returns true when it was independent.
  bool add(Row row) {
    if (row.size() != cols_)
      throw std::invalid_argument("rank accumulator: row width mismatch");
    std::size_t lead = 0;
    while (lead < cols_) {
      while (lead < cols_ && row[lead] == 0) ++lead;
      if (lead == cols_) return false;
      const long idx = pivot_of_col_[lead];
      if (idx < 0) break;
      const Row& piv = rows_[static_cast<std::size_t>(idx)];
      kernels::axpy_mod(row.data() + lead, piv.data() + lead, cols_ - lead,
                        q_ - row[lead], q_);
      ++lead;
    }
    if (lead == cols_) return false;
    kernels::scale_mod(row.data() + lead, cols_ - lead, fq_.inv(row[lead]), q_);
    pivot_of_col_[lead] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

 private:
  std::size_t cols_;
  u64 q_;
  Fq fq_;
  std::vector<long> pivot_of_col_;
  std::vector<Row> rows_;
};

}  // namespace

bool bott_vanishes(const CohomologySpot& spot) {
  validate_spot(spot);
  const bool diagonal = spot.b == spot.a && spot.ell == 0;
  const bool sections = spot.b == 0 && spot.ell > spot.a;
  const bool top = spot.b == spot.r && spot.ell < spot.a - spot.r;
  return !(diagonal || sections || top);
}

bool restricted_vanishing_certified(int r, const std::vector<int>& degrees,
                                    int a, int b, long long ell) {
  return restricted_vanishing_certified(r, degrees, a, b, ell, nullptr);
}

bool restricted_vanishing_certified(int r, const std::vector<int>& degrees,
                                    int a, int b, long long ell,
                                    CohomologySpot* failing) {
  const int c = static_cast<int>(degrees.size());
  if (c >= 31) throw std::domain_error("restricted vanishing: too many degrees");
  for (unsigned mask = 0; mask < (1u << c); ++mask) {
    long long s = 0;
    int k = 0;
    for (int i = 0; i < c; ++i)
      if (mask >> i & 1) {
        s += degrees[static_cast<std::size_t>(i)];
        ++k;
      }
    if (b + k > r) continue;  // beyond the space dimension: always vanishes
    const CohomologySpot spot{r, a, b + k, ell - s};
    if (!bott_vanishes(spot)) {
      if (failing != nullptr) *failing = spot;
      return false;
    }
  }
  return true;
}

FlennerCase::FlennerCase(CIType ci_, int p_) : ci(std::move(ci_)), p(p_) {
  const int dim = ci.n - ci.c();
  if (dim < 1)
    throw std::domain_error("flenner case: the intersection must be positive-dimensional");
  if (p < 1 || p > dim)
    throw std::domain_error("flenner case: hodge index must lie in [1, dim]");
}

int FlennerCase::degree_sum() const {
  int s = 0;
  for (int d : ci.degrees) s += d;
  return s;
}

ConditionIIReport condition_ii(const FlennerCase& fc) {
  const int amb = fc.ambient();
  const int dim = fc.dim_x();
  const int c = fc.ci.c();
  const long long base_twist = amb + 1 - fc.degree_sum();

  ConditionIIReport rep;
  rep.certified = true;
  for (int j = 0; j + 2 <= dim; ++j) {
    const int a = dim - 1 - j;
    const int b = j + 1;
    for (auto& e : compositions(j, c)) {
      TermTrace term;
      term.j = j;
      term.e = e;
      term.a = a;
      term.b = b;
      term.twist = base_twist - dot_degrees(e, fc.ci.degrees);
      term.certified = restricted_vanishing_certified(
          amb, fc.ci.degrees, a, b, term.twist, &term.failing);
      rep.certified = rep.certified && term.certified;
      rep.terms.push_back(std::move(term));
    }
  }
  return rep;
}

std::string to_string(SurjStatus s) {
  switch (s) {
    case SurjStatus::Surjective: return "surjective";
    case SurjStatus::NotSurjective: return "not-surjective";
    case SurjStatus::DegenerateTarget: return "degenerate-target";
    case SurjStatus::BudgetExceeded: return "budget-exceeded";
  }
  throw std::logic_error("unknown surjectivity status");
}

ConditionIReport condition_i(const FlennerCase& fc, const PrimeField& field,
                             u64 seed, const ConditionIBudget& budget) {
  if (field.ext_degree != 1)
    throw std::domain_error("condition-i: an extension field is not supported here");
  if (!is_prime_u64(field.q))
    throw std::domain_error("condition-i: field order must be prime");
  const u64 q = field.q;
  const int amb = fc.ambient();
  const int dim = fc.dim_x();
  const int c = fc.ci.c();
  const std::vector<int>& degs = fc.ci.degrees;
  const long long w = fc.degree_sum() - amb - 1;

  ConditionIReport rep;
  rep.hodge_p = fc.p;
  rep.q = q;
  rep.seed = seed;

  const auto left_exps = compositions(dim - fc.p, c);
  const auto right_exps = compositions(fc.p - 1, c);
  const auto target_exps = compositions(dim - 1, c);

  auto piece_degree = [&](const std::vector<int>& e, long long shift) {
    return dot_degrees(e, degs) + shift;
  };
  auto piece_dims = [&](const std::vector<std::vector<int>>& exps,
                        long long shift) {
    std::vector<long> dims;
    dims.reserve(exps.size());
    for (auto& e : exps) dims.push_back(sieve_dim(amb, degs, piece_degree(e, shift)));
    return dims;
  };

  const std::vector<long> left_dims = piece_dims(left_exps, w);
  const std::vector<long> right_dims = piece_dims(right_exps, w);
  const std::vector<long> target_dims = piece_dims(target_exps, 2 * w);
  auto total = [](const std::vector<long>& v) {
    std::size_t s = 0;
    for (long x : v) s += static_cast<std::size_t>(x);
    return s;
  };
  rep.dim_left = total(left_dims);
  rep.dim_right = total(right_dims);
  rep.dim_target = total(target_dims);

  if (rep.dim_target == 0) {
    rep.status = SurjStatus::DegenerateTarget;
    rep.fast_path = true;
    return rep;
  }
  if (rep.dim_left == 0 || rep.dim_right == 0) {
    rep.status = SurjStatus::NotSurjective;
    rep.fast_path = true;
    return rep;
  }
  if ((fc.p == 1 || fc.p == dim) && w >= 0) {
    // One factor is the single piece (S/I)_w and every structure constant is
    // binom(g_k, g_k) = binom(g_k, 0) = 1, so each target block is hit by the
    // matching block paired with (S/I)_w; multiplication of nonnegative
    // graded pieces of the coordinate ring is surjective because every
    // monomial of the product degree factors through the two degrees.
    rep.status = SurjStatus::Surjective;
    rep.fast_path = true;
    rep.rank = rep.dim_target;
    return rep;
  }

  if (rep.dim_left > budget.max_space_dim ||
      rep.dim_right > budget.max_space_dim ||
      rep.dim_target > budget.max_space_dim ||
      rep.dim_left * rep.dim_right > budget.max_pairs) {
    rep.status = SurjStatus::BudgetExceeded;
    return rep;
  }

  // Degrees of every graded piece the matrix touches.
  std::set<long long> needed;
  for (std::size_t i = 0; i < left_exps.size(); ++i)
    if (left_dims[i] > 0) needed.insert(piece_degree(left_exps[i], w));
  for (std::size_t i = 0; i < right_exps.size(); ++i)
    if (right_dims[i] > 0) needed.insert(piece_degree(right_exps[i], w));
  for (std::size_t i = 0; i < target_exps.size(); ++i)
    if (target_dims[i] > 0) needed.insert(piece_degree(target_exps[i], 2 * w));

  // Draw members until every touched graded piece has the sieve dimension
  // (the complete-intersection regularity proxy).
  std::map<long long, GradedQuotient> quotients;
  std::vector<HPoly> polys;
  bool regular = false;
  for (u64 bump = 0; bump < 20 && !regular; ++bump) {
    quotients.clear();
    polys = member_polys(fc.ci, q, seed + bump);
    regular = true;
    for (long long t : needed) {
      GradedQuotient gq(amb, static_cast<int>(t), polys, q);
      if (gq.dim() != sieve_dim(amb, degs, t)) {
        regular = false;
        break;
      }
      quotients.emplace(t, std::move(gq));
    }
    if (regular) rep.seed = seed + bump;
  }
  if (!regular)
    throw std::runtime_error(
        "condition-i: no member with the expected graded dimensions found "
        "after 20 seed bumps");
  for (const HPoly& f : polys) rep.members.push_back(hp_to_string(f));

  // Structure constant of the (e, f) block, reduced mod q.
  auto block_scalar = [&](const std::vector<int>& e, const std::vector<int>& f) {
    Int s = 1;
    for (std::size_t k = 0; k < e.size(); ++k) s *= binom(e[k] + f[k], e[k]);
    return static_cast<u64>(
        mpz_fdiv_ui(s.get_mpz_t(), static_cast<unsigned long>(q)));
  };

  // The matrix is block-diagonal over target multidegrees; decide each
  // target block independently with early exit at full rank.
  std::size_t reached = 0;
  for (std::size_t gi = 0; gi < target_exps.size(); ++gi) {
    const long block_dim = target_dims[gi];
    if (block_dim == 0) continue;
    const auto& g = target_exps[gi];
    const GradedQuotient& qt = quotients.at(piece_degree(g, 2 * w));
    RankAccumulator acc(static_cast<std::size_t>(block_dim), q);
    bool full = false;
    for (std::size_t ei = 0; ei < left_exps.size() && !full; ++ei) {
      if (left_dims[ei] == 0) continue;
      const auto& e = left_exps[ei];
      std::vector<int> f(static_cast<std::size_t>(c));
      bool ok = true;
      for (int k = 0; k < c; ++k) {
        f[static_cast<std::size_t>(k)] =
            g[static_cast<std::size_t>(k)] - e[static_cast<std::size_t>(k)];
        ok = ok && f[static_cast<std::size_t>(k)] >= 0;
      }
      if (!ok) continue;
      if (sieve_dim(amb, degs, piece_degree(f, w)) == 0) continue;
      const u64 scalar = block_scalar(e, f);
      if (scalar == 0) continue;
      const GradedQuotient& qa = quotients.at(piece_degree(e, w));
      const GradedQuotient& qb = quotients.at(piece_degree(f, w));
      for (long ai = 0; ai < qa.dim() && !full; ++ai) {
        const ExpVec& ma = qa.quotient_monomial(ai);
        for (long bi = 0; bi < qb.dim() && !full; ++bi) {
          const ExpVec& mb = qb.quotient_monomial(bi);
          ExpVec prod(ma.size());
          for (std::size_t k = 0; k < ma.size(); ++k) prod[k] = ma[k] + mb[k];
          Row row = qt.reduce_monomial(prod);
          if (scalar != 1)
            kernels::scale_mod(row.data(), row.size(), scalar, q);
          acc.add(std::move(row));
          full = acc.rank() == static_cast<std::size_t>(block_dim);
        }
      }
    }
    reached += acc.rank();
    if (!full) {
      rep.rank = reached;
      rep.status = SurjStatus::NotSurjective;
      return rep;
    }
  }
  rep.rank = reached;
  rep.status = SurjStatus::Surjective;
  return rep;
}

std::vector<TorelliRow> torelli_sweep(int max_ambient, const PrimeField& field,
                                      u64 seed, const ConditionIBudget& budget) {
  if (max_ambient < 3)
    throw std::domain_error("torelli sweep: max ambient must be at least 3");

  std::vector<TorelliRow> rows;
  for (int amb = 3; amb <= max_ambient; ++amb) {
    for (int c = 1; c <= amb - 2; ++c) {
      // Nondecreasing degree tuples with sum at most amb + 2.
      std::vector<int> degs(static_cast<std::size_t>(c), 2);
      auto emit = [&](auto&& self, int pos, int min_d, int budget_sum) -> void {
        if (pos == c) {
          const CIType ci(amb, degs);
          TorelliRow row;
          row.ci = ci;
          row.ambient = amb;
          row.dim_x = amb - c;
          row.cond_ii_certified = condition_ii(FlennerCase(ci, 1)).certified;
          bool all_evaluated = true;
          for (int p = 1; p <= row.dim_x; ++p) {
            const ConditionIReport rep =
                condition_i(FlennerCase(ci, p), field, seed, budget);
            row.cond_i_status.push_back(rep.status);
            if (rep.status == SurjStatus::BudgetExceeded) all_evaluated = false;
            if (rep.status == SurjStatus::Surjective) {
              row.surjective_p = p;
              break;
            }
          }
          const bool any_surjective = row.surjective_p > 0;
          all_evaluated = all_evaluated &&
                          row.cond_i_status.size() ==
                              static_cast<std::size_t>(row.dim_x);
          row.certified = row.cond_ii_certified && any_surjective;
          row.flagged = !row.cond_ii_certified ||
                        (all_evaluated && !any_surjective);
          if (ci.degrees == std::vector<int>{2, 2})
            row.note =
                "two-quadric pencil family: outside this certification "
                "method's range (covered by the pencil symmetry checks)";
          else if (amb == 3 && ci.degrees == std::vector<int>{3})
            row.note =
                "cubic surface: the shape excluded from the main statement";
          rows.push_back(std::move(row));
          return;
        }
        for (int d = min_d; d * (c - pos) <= budget_sum; ++d) {
          degs[static_cast<std::size_t>(pos)] = d;
          self(self, pos + 1, d, budget_sum - d);
        }
      };
      emit(emit, 0, 2, amb + 2);
    }
  }
  return rows;
}

}  // namespace ci
