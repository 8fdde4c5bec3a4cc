// Desk-scale acceptance suite: ten self-contained criteria exercising the
// whole toolkit end to end (exception lists, the two dimension-bound sweeps,
// the certification engine, the named geometric examples, the scaling-map
// bookkeeping, the Torelli sweep, and the oracle cross-checks). Each
// criterion returns a verdict plus a one-line detail string; the `all` CLI
// subcommand and the standalone acceptance binary both run this list.
#pragma once

#include <string>
#include <vector>

namespace ci {

struct CriterionResult {
  int index = 0;        // 1-based position in the suite
  std::string name;     // short slug, e.g. "exception-lists"
  bool pass = false;
  std::string detail;   // counts / witness summary
};

CriterionResult criterion_exception_lists();     // 1
CriterionResult criterion_dimension_gap_sweep(); // 2
CriterionResult criterion_max_dimension_sweep(); // 3
CriterionResult criterion_certify_engine();      // 4
CriterionResult criterion_quadric_pencils();     // 5
CriterionResult criterion_cyclic_pullbacks();    // 6
CriterionResult criterion_nodal_families();      // 7
CriterionResult criterion_scaling_duality();     // 8
CriterionResult criterion_torelli_sweep();       // 9
CriterionResult criterion_oracle_coherence();    // 10

// Runs all ten in order.
std::vector<CriterionResult> run_acceptance();

}  // namespace ci
