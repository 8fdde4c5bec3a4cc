// Exceptional-tuple enumeration: the exact codimension-count value attached
// to a shape and a linear-subspace dimension l, the sweep that lists every
// shape whose value stays at or below n+1 inside the admissible l-window,
// and the downstream filter that reduces those records to the ten shapes
// surviving the Fano / codimension / non-all-quadric rules.
#pragma once

#include <vector>

#include "ci/combinat.hpp"
#include "ci/rational.hpp"

namespace ci {

struct ExceptionRecord {
  CIType ci;
  int l = 0;             // dimension of the linear subspace family
  Int value = 0;         // exact codimension-count value
  int threshold = 0;     // n + 1
  bool is_exception = false;  // value <= threshold
};

// sum_i C(d_i + l, d_i)  -  (n - l)(l + 1)  +  max(0, sum_i C(d_i + l - 1, l) + l + 1 - n),
// evaluated exactly. Requires 0 <= l <= n.
Int codim_formula(const CIType& ci, int l);

// True when codim_formula(ci, l) <= n + 1.
bool is_exception(const CIType& ci, int l);

// Every record with value <= n+1 over all shapes with ambient <= n_max,
// sorted degrees with largest degree >= 3, and every l in the window
// n - c >= 2l >= n - c - 2. The l-monotonicity of the value terminates the
// degree sweep for l >= 1; for l in {0,1} records are additionally capped
// at degree sum <= 2*n_max (the l=0 value does not depend on the degrees).
// Output sorted by (l, shape). Requires n_max >= 5.
std::vector<ExceptionRecord> enumerate_lemma44(int n_max);

// Reduces enumeration records to the final exception shapes: l >= 2 records
// enter by their value; l == 1 records enter iff l1_dim_lower <= n-c <= 4
// and 2*sum(d) <= 4n - c - 3; l == 0 records enter iff n-c == 2. Survivors
// must then pass {c >= 2}, {sum(d) <= n}, and {not every degree 2}; the
// result is deduplicated and sorted.
std::vector<CIType> theorem_exception_filter(
    const std::vector<ExceptionRecord>& records, int l1_dim_lower = 3);

// enumerate_lemma44 followed by theorem_exception_filter.
std::vector<CIType> theorem_exception_list(int n_max);

}  // namespace ci
