#include "ci/combinat.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace ci {

CIType::CIType(int n_, std::vector<int> degrees_)
    : n(n_), degrees(std::move(degrees_)) {
  if (degrees.empty()) throw std::domain_error("CIType: degrees must be nonempty");
  if (!std::is_sorted(degrees.begin(), degrees.end()))
    throw std::domain_error("CIType: degrees must be sorted ascending");
  if (degrees.front() < 2) throw std::domain_error("CIType: every degree must be >= 2");
  if (n - c() < 1)
    throw std::domain_error("CIType: need dim X = n - c >= 1");
}

std::string CIType::to_string() const {
  std::ostringstream os;
  os << "(" << n;
  for (int d : degrees) os << "," << d;
  os << ")";
  return os.str();
}

Int binom(long a, long b) {
  if (b < 0 || a < b) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(b));
  return r;
}

Int dim_forms(long n, long d) {
  if (n < 0 || d < 0) throw std::domain_error("dim_forms: need n, d >= 0");
  return binom(n + d, d);
}

Int h0_restricted(const CIType& ci, int d) {
  const int n = ci.n;
  const int c = ci.c();
  if (std::find(ci.degrees.begin(), ci.degrees.end(), d) == ci.degrees.end())
    throw std::domain_error("h0_restricted: d must be one of the degrees");

  const bool all_equal = ci.degrees.front() == ci.degrees.back();
  if (all_equal) return binom(n + d, d) - c;

  // Remaining supported patterns have a tail of equal degrees D >= 3 after
  // one or two leading quadrics.
  const int quadrics = static_cast<int>(
      std::count(ci.degrees.begin(), ci.degrees.end(), 2));
  const int D = ci.degrees.back();
  const bool tail_equal =
      std::all_of(ci.degrees.begin() + quadrics, ci.degrees.end(),
                  [&](int e) { return e == D; });
  if (!tail_equal || D < 3 || quadrics < 1 || quadrics > 2)
    throw std::domain_error(
        "h0_restricted: unsupported degree pattern (need all-equal, "
        "(2,2,D,...,D) or (2,D,...,D))");

  if (quadrics == 2) {
    if (d == D)
      return binom(n + D, n) - 2 * binom(n + D - 2, n) + binom(n + D - 4, n) -
             (c - 2);
    return binom(n + 2, 2) - 2;  // d == 2
  }
  if (d == D) return binom(n + D, n) - binom(n + D - 2, n) - (c - 1);
  return binom(n + 2, 2) - 1;  // d == 2
}

namespace {

Rat e116_lhs(int n, int d) {
  Rat lhs = make_rat(1, 2) * Rat(binom(n + d - 1, d - 1));
  lhs += make_rat(1, 4) * Rat(binom(n + d - 2, d - 1));
  lhs += make_rat(1, 8) * Rat(binom(n + d - 3, d - 1));
  return lhs;
}

// Enumerate partitions of total into parts sorted descending, >= 2 parts.
void for_each_partition(int total,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      if (parts.size() >= 2) fn(parts);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(total, total);
}

std::string partition_str(const std::vector<int>& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

}  // namespace

std::vector<IneqResult> elementary_inequalities(int n, int d) {
  if (n < 1 || d < 2)
    throw std::domain_error("elementary_inequalities: need n >= 1, d >= 2");
  std::vector<IneqResult> out;

  {  // E126: (2/3)C(n+d-1,d-1) + (4/9)C(n+d-2,d-1) > 2 C(n+d-2,n) + 2
    IneqResult r;
    r.id = "E126";
    r.lhs = make_rat(2, 3) * Rat(binom(n + d - 1, d - 1)) +
            make_rat(4, 9) * Rat(binom(n + d - 2, d - 1));
    r.rhs = Rat(2 * binom(n + d - 2, n) + 2);
    r.holds = r.lhs > r.rhs;
    out.push_back(std::move(r));
  }

  {  // E116: (1/2)C(n+d-1,d-1)+(1/4)C(n+d-2,d-1)+(1/8)C(n+d-3,d-1) > 2 C(n+d-2,n)
    IneqResult r;
    r.id = "E116";
    r.lhs = e116_lhs(n, d);
    r.rhs = Rat(2 * binom(n + d - 2, n));
    r.holds = r.lhs > r.rhs;
    out.push_back(std::move(r));
  }

  {  // E123: for all splits b1 >= b2 >= 0 with 1 <= b1+b2 <= n-3:
     //   (b1-b2-1/2)*Dstar + 2 b1 b2 < (b1-1/2) C(n+d,d) - b1 C(n+d-2,n)
     // where Dstar is the worst-case eigenspace dimension: the full space
     // minus the E116 lower bound when the coefficient is positive, else 0.
    IneqResult r;
    r.id = "E123";
    Rat dstar = Rat(binom(n + d, d)) - e116_lhs(n, d);
    if (dstar < 0) dstar = 0;
    bool all_hold = true, have_any = false;
    Rat worst_margin, worst_lhs, worst_rhs;
    int wb1 = 0, wb2 = 0;
    for (int b1 = 0; b1 <= n - 3; ++b1) {
      for (int b2 = 0; b2 <= b1; ++b2) {
        const int s = b1 + b2;
        if (s < 1 || s > n - 3) continue;
        const Rat dim_e = (b1 > b2) ? dstar : Rat(0);
        Rat lhs = (Rat(b1 - b2) - make_rat(1, 2)) * dim_e + Rat(2 * b1 * b2);
        Rat rhs = (Rat(b1) - make_rat(1, 2)) * Rat(binom(n + d, d)) -
                  Rat(b1) * Rat(binom(n + d - 2, n));
        Rat margin = rhs - lhs;
        if (!have_any || margin < worst_margin) {
          have_any = true;
          worst_margin = margin;
          worst_lhs = lhs;
          worst_rhs = rhs;
          wb1 = b1;
          wb2 = b2;
        }
        if (!(lhs < rhs)) all_hold = false;
      }
    }
    if (!have_any) {
      r.lhs = Rat(0);
      r.rhs = Rat(0);
      r.holds = true;
      r.note = "vacuous: no splits with 1 <= b1+b2 <= n-3";
    } else {
      r.lhs = worst_lhs;
      r.rhs = worst_rhs;
      r.holds = all_hold;
      r.note = "worst split b1=" + std::to_string(wb1) +
               ", b2=" + std::to_string(wb2);
    }
    out.push_back(std::move(r));
  }

  // E112a..E112d: quantified over sorted multiplicity vectors
  // a0 >= a1 >= ... >= 1 summing to n+1 with at least two parts.
  struct Worst {
    bool have = false;
    Rat lhs, rhs;
    std::string note;
    bool all_hold = true;
  };
  Worst wa, wb, wc, wd;
  auto update = [](Worst& w, const Int& lhs, const Int& rhs,
                   const std::string& note) {
    Rat margin = Rat(lhs) - Rat(rhs);
    if (!w.have || margin < Rat(w.lhs) - Rat(w.rhs)) {
      w.have = true;
      w.lhs = Rat(lhs);
      w.rhs = Rat(rhs);
      w.note = note;
    }
    if (lhs < rhs) w.all_hold = false;
  };

  for_each_partition(n + 1, [&](const std::vector<int>& a) {
    const int mu = static_cast<int>(a.size());
    const std::string ps = partition_str(a);
    // (a) pairwise bound among non-leading parts, 1 <= i < j.
    for (int i = 1; i < mu; ++i)
      for (int j = i + 1; j < mu; ++j) {
        Int lhs = binom(a[i] + d - 2, d - 1) * a[j] +
                  binom(a[j] + d - 2, d - 1) * a[i];
        Int rhs = Int(2) * a[i] * a[j];
        update(wa, lhs, rhs,
               ps + " i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    // (b) leading part against parts with index >= 2.
    for (int j = 2; j < mu; ++j) {
      Int lhs = binom(a[0] + d - 2, d - 1) * a[j] + binom(a[j] + d - 1, d);
      Int rhs = Int(2) * a[0] * a[j];
      update(wb, lhs, rhs, ps + " j=" + std::to_string(j));
    }
    // (c) leading pair bound.
    {
      Int first = binom(a[0] + d - 1, d);
      Int second = binom(a[0] + d - 2, d - 1) * a[1];
      Int lhs = std::min(first, second) + binom(a[1] + d - 1, d);
      Int rhs = Int(2) * a[0] * a[1];
      update(wc, lhs, rhs, ps);
    }
    // (d) triple sum, i < j < k-1: nonnegative by construction; evaluated
    // exactly so regressions in the term generation stay visible.
    {
      Int lhs(0);
      for (int i = 0; i < mu; ++i)
        for (int j = i + 1; j < mu; ++j)
          for (int k = j + 2; k < mu; ++k)
            lhs += binom(a[i] + d - 3, d - 2) * a[j] * a[k];
      update(wd, lhs, Int(0), ps);
    }
  });

  auto emit = [&](const char* id, const Worst& w) {
    IneqResult r;
    r.id = id;
    if (!w.have) {
      r.lhs = Rat(0);
      r.rhs = Rat(0);
      r.holds = true;
      r.note = "vacuous";
    } else {
      r.lhs = w.lhs;
      r.rhs = w.rhs;
      r.holds = w.all_hold;
      r.note = "worst witness " + w.note;
    }
    out.push_back(std::move(r));
  };
  emit("E112a", wa);
  emit("E112b", wb);
  emit("E112c", wc);
  emit("E112d", wd);
  return out;
}

}  // namespace ci
