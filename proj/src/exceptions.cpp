#include "ci/exceptions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ci {

namespace {

int degree_sum(const CIType& ci) {
  return std::accumulate(ci.degrees.begin(), ci.degrees.end(), 0);
}

ExceptionRecord make_record(const CIType& ci, int l) {
  ExceptionRecord rec;
  rec.ci = ci;
  rec.l = l;
  rec.value = codim_formula(ci, l);
  rec.threshold = ci.n + 1;
  rec.is_exception = rec.value <= rec.threshold;
  return rec;
}

}  // namespace

Int codim_formula(const CIType& ci, int l) {
  if (l < 0 || l > ci.n)
    throw std::domain_error("codim formula: need 0 <= l <= n");
  Int first = 0, inner = 0;
  for (int d : ci.degrees) {
    first += binom(d + l, d);
    inner += binom(d + l - 1, l);
  }
  inner += l + 1 - ci.n;
  if (inner < 0) inner = 0;
  return first - Int(ci.n - l) * (l + 1) + inner;
}

bool is_exception(const CIType& ci, int l) {
  return codim_formula(ci, l) <= ci.n + 1;
}

std::vector<ExceptionRecord> enumerate_lemma44(int n_max) {
  if (n_max < 5)
    throw std::domain_error("exception sweep: n_max must be at least 5");

  std::vector<ExceptionRecord> out;
  std::vector<int> degs;

  for (int n = 2; n <= n_max; ++n) {
    for (int c = 1; c <= n - 1; ++c) {
      const int dim = n - c;
      const int l_lo = std::max(0, (dim - 2 + 1) / 2);  // ceil((dim-2)/2)
      const int l_hi = dim / 2;
      for (int l = l_lo; l <= l_hi; ++l) {
        degs.assign(static_cast<std::size_t>(c), 2);
        // Nondecreasing degree tuples; the value is nondecreasing in every
        // coordinate, so once the minimal completion of a prefix exceeds
        // the threshold the branch is done.
        auto walk = [&](auto&& self, int pos, int min_d) -> void {
          for (int d = min_d;; ++d) {
            for (int k = pos; k < c; ++k) degs[static_cast<std::size_t>(k)] = d;
            const CIType probe(n, degs);
            const Int floor_value = codim_formula(probe, l);
            const int total = degree_sum(probe);
            if (l >= 1 && floor_value > n + 1) break;
            if (l == 0 && total > 2 * n_max) break;
            const bool within_cap = l >= 2 || total <= 2 * n_max;
            if (pos + 1 < c) {
              self(self, pos + 1, d);
            } else if (degs.back() >= 3 && floor_value <= n + 1 && within_cap) {
              out.push_back(make_record(probe, l));
            }
          }
        };
        walk(walk, 0, 2);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ExceptionRecord& a, const ExceptionRecord& b) {
              if (a.l != b.l) return a.l < b.l;
              return a.ci < b.ci;
            });
  return out;
}

std::vector<CIType> theorem_exception_filter(
    const std::vector<ExceptionRecord>& records, int l1_dim_lower) {
  std::set<CIType> keep;
  for (const ExceptionRecord& rec : records) {
    const CIType& ci = rec.ci;
    const int dim = ci.n - ci.c();
    const int total = degree_sum(ci);
    bool eligible = false;
    if (rec.l >= 2) {
      eligible = rec.is_exception;
    } else if (rec.l == 1) {
      eligible = l1_dim_lower <= dim && dim <= 4 &&
                 2 * total <= 4 * ci.n - ci.c() - 3;
    } else {
      eligible = dim == 2;
    }
    if (!eligible) continue;
    if (ci.c() < 2) continue;               // hypersurfaces handled elsewhere
    if (total > ci.n) continue;             // only Fano shapes survive
    if (ci.degrees.back() == 2) continue;   // all-quadric shapes excluded
    keep.insert(ci);
  }
  return std::vector<CIType>(keep.begin(), keep.end());
}

std::vector<CIType> theorem_exception_list(int n_max) {
  return theorem_exception_filter(enumerate_lemma44(n_max));
}

}  // namespace ci
