// Acceptance gate: runs the ten toolkit-level checks and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <vector>

#include "ci/acceptance.hpp"

int main() {
  using Criterion = ci::CriterionResult (*)();
  const std::vector<Criterion> criteria = {
      ci::criterion_exception_lists,    ci::criterion_dimension_gap_sweep,
      ci::criterion_max_dimension_sweep, ci::criterion_certify_engine,
      ci::criterion_quadric_pencils,    ci::criterion_cyclic_pullbacks,
      ci::criterion_nodal_families,     ci::criterion_scaling_duality,
      ci::criterion_torelli_sweep,      ci::criterion_oracle_coherence,
  };

  int failures = 0;
  for (const Criterion& fn : criteria) {
    const ci::CriterionResult r = fn();
    std::printf("[%s] criterion %02d %-22s %s\n", r.pass ? "PASS" : "FAIL",
                r.index, r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("acceptance: %d/10 criteria passed\n",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
