#include "ci/certify.hpp"

#include <algorithm>
#include <stdexcept>

namespace ci {

namespace {

void require_compatible(const CIType& ci, const EigenSpec& spec) {
  if (spec.n() != ci.n) {
    throw std::invalid_argument(
        "certify: weight list is for a different ambient dimension (" +
        std::to_string(spec.n()) + " vs " + std::to_string(ci.n) + ")");
  }
}

// (n+1)^2 - sum of squared weight multiplicities.
Int ambient_term(const EigenSpec& spec) {
  Int s = Int(spec.n() + 1) * Int(spec.n() + 1);
  for (long a : spec.multiplicities()) s -= Int(a) * Int(a);
  return s;
}

// Enumerate splits b1 >= b2 >= 0 with b1 + b2 = total.
std::vector<std::pair<int, int>> splits(int total) {
  std::vector<std::pair<int, int>> out;
  for (int b2 = 0; 2 * b2 <= total; ++b2) out.push_back({total - b2, b2});
  return out;
}

}  // namespace

CasePattern classify_degrees(const std::vector<int>& degrees) {
  const int c = static_cast<int>(degrees.size());
  int quadrics = 0;
  while (quadrics < c && degrees[quadrics] == 2) ++quadrics;
  const bool tail_equal =
      std::all_of(degrees.begin() + quadrics, degrees.end(),
                  [&](int d) { return d == degrees.back(); });
  if (quadrics == c) return CasePattern::EqualDegrees;  // all quadrics
  if (!tail_equal) return CasePattern::Mixed;
  if (quadrics == 0) return CasePattern::EqualDegrees;
  if (quadrics == 1) return CasePattern::OneQuadric;
  if (quadrics == 2) return CasePattern::TwoQuadrics;
  return CasePattern::Mixed;
}

std::vector<CaseCertificate> certify_equal_degrees(const CIType& ci,
                                                   const EigenSpec& spec) {
  require_compatible(ci, spec);
  const int c = ci.c();
  const int d = ci.degrees.back();
  if (!std::all_of(ci.degrees.begin(), ci.degrees.end(),
                   [&](int x) { return x == d; })) {
    throw std::domain_error(
        "equal-degrees engine needs all degrees equal; got " + ci.to_string());
  }
  if (c == 2 && d == 2) {
    throw std::domain_error(
        "type (2,2) is a two-quadric pencil: it carries the 2^n sign-change "
        "automorphism group, so no inequality of this shape can hold; "
        "use the pencil verifier instead");
  }
  const Int amb = ambient_term(spec);
  const std::vector<Int> dims = eigenspace_dims(spec, d);
  const Int space = dim_forms(ci.n, d);

  std::vector<CaseCertificate> out;
  for (int w = 0; w < spec.p; ++w) {
    for (auto [b1, b2] : splits(c)) {
      CaseCertificate cert;
      cert.case_id = "equal-degrees";
      cert.w = w;
      cert.b1 = b1;
      cert.b2 = b2;
      cert.lhs = Rat(amb + Int(b1 - b2) * dims[w] + Int(2) * b1 * b2);
      cert.rhs = Rat(Int(b1) * space);
      cert.holds = cert.lhs < cert.rhs;
      out.push_back(std::move(cert));
    }
  }
  return out;
}

std::vector<CaseCertificate> certify_two_quadrics_case(const CIType& ci,
                                                       const EigenSpec& spec) {
  require_compatible(ci, spec);
  const int c = ci.c();
  const int d = ci.degrees.back();
  const bool shape_ok = c >= 3 && ci.degrees[0] == 2 && ci.degrees[1] == 2 &&
                        d >= 3 &&
                        std::all_of(ci.degrees.begin() + 2, ci.degrees.end(),
                                    [&](int x) { return x == d; });
  if (!shape_ok) {
    throw std::domain_error(
        "two-quadrics engine needs degrees (2,2,d,...,d) with d >= 3; got " +
        ci.to_string());
  }
  const Int amb = ambient_term(spec);
  const std::vector<Int> dims_d = eigenspace_dims(spec, d);
  const std::vector<Int> dims_2 = eigenspace_dims(spec, 2);
  const Int max_e2 = *std::max_element(dims_2.begin(), dims_2.end());
  const Int h0_quad = h0_restricted(ci, 2);  // C(n+2,2) - 2
  const Int top = dim_forms(ci.n, d) - Int(2) * dim_forms(ci.n, d - 2) +
                  (d >= 4 ? dim_forms(ci.n, d - 4) : Int(0));

  struct Scenario {
    const char* name;
    Int term;
  };
  const Scenario scenarios[2] = {
      {"quadric-classes-distinct", h0_quad},
      {"quadric-classes-equal", Int(2) * max_e2 - Int(4)},
  };

  std::vector<CaseCertificate> out;
  for (int w = 0; w < spec.p; ++w) {
    for (auto [b1, b2] : splits(c - 2)) {
      for (const Scenario& sc : scenarios) {
        CaseCertificate cert;
        cert.case_id = "two-quadrics";
        cert.w = w;
        cert.b1 = b1;
        cert.b2 = b2;
        cert.scenario = sc.name;
        cert.lhs =
            Rat(amb + sc.term + Int(b1 - b2) * dims_d[w] + Int(2) * b1 * b2);
        cert.rhs = Rat(Int(2) * h0_quad + Int(b1) * top);
        cert.holds = cert.lhs < cert.rhs;
        out.push_back(std::move(cert));
      }
    }
  }
  return out;
}

std::vector<CaseCertificate> certify_one_quadric_case(const CIType& ci,
                                                      const EigenSpec& spec) {
  require_compatible(ci, spec);
  const int c = ci.c();
  const int d = ci.degrees.back();
  const bool shape_ok = c >= 2 && ci.degrees[0] == 2 && d >= 3 &&
                        std::all_of(ci.degrees.begin() + 1, ci.degrees.end(),
                                    [&](int x) { return x == d; });
  if (!shape_ok) {
    throw std::domain_error(
        "one-quadric engine needs degrees (2,d,...,d) with d >= 3; got " +
        ci.to_string());
  }
  const Rat amb_half = make_rat(ambient_term(spec), Int(2));
  const std::vector<Int> dims_d = eigenspace_dims(spec, d);
  const Int top = dim_forms(ci.n, d) - dim_forms(ci.n, d - 2);

  std::vector<CaseCertificate> out;
  for (int w = 0; w < spec.p; ++w) {
    for (auto [b1, b2] : splits(c - 1)) {
      CaseCertificate cert;
      cert.case_id = "one-quadric";
      cert.w = w;
      cert.b1 = b1;
      cert.b2 = b2;
      cert.lhs = amb_half + Rat(Int(b1 - b2) * dims_d[w] + Int(2) * b1 * b2);
      cert.rhs = Rat(Int(b1) * top);
      cert.holds = cert.lhs < cert.rhs;
      out.push_back(std::move(cert));
    }
  }
  return out;
}

std::vector<CaseCertificate> certify_dispatch(const CIType& ci,
                                              const EigenSpec& spec) {
  switch (classify_degrees(ci.degrees)) {
    case CasePattern::EqualDegrees:
      return certify_equal_degrees(ci, spec);
    case CasePattern::TwoQuadrics:
      return certify_two_quadrics_case(ci, spec);
    case CasePattern::OneQuadric:
      return certify_one_quadric_case(ci, spec);
    case CasePattern::Mixed:
      break;
  }
  throw std::domain_error("no case engine matches degree pattern of " +
                          ci.to_string());
}

std::vector<std::vector<int>> case_engine_degree_tuples(int max_degree,
                                                        int max_c) {
  std::vector<std::vector<int>> out;
  for (int c = 1; c <= max_c; ++c) {
    std::vector<int> degs(c, 2);
    const auto walk = [&](auto&& self, int pos, int lo) -> void {
      if (pos == c) {
        const bool all_quadric = std::all_of(
            degs.begin(), degs.end(), [](int d) { return d == 2; });
        if (!all_quadric && classify_degrees(degs) != CasePattern::Mixed)
          out.push_back(degs);
        return;
      }
      for (int d = lo; d <= max_degree; ++d) {
        degs[pos] = d;
        self(self, pos + 1, d);
      }
    };
    walk(walk, 0, 2);
  }
  return out;
}

}  // namespace ci
