// Dense exact linear algebra over prime fields, built on the mod-q kernels.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ci/fq.hpp"

namespace ci {

using Row = std::vector<u64>;
using Matrix = std::vector<Row>;  // row-major, entries reduced mod q

// Rank by Gaussian elimination (destroys `rows`).  If target >= 0, stops
// early as soon as the rank reaches target.
long rank_mod_inplace(Matrix& rows, u64 q, long target = -1);
long rank_mod(Matrix rows, u64 q, long target = -1);

// Reduced row echelon form with its pivot columns (sorted ascending).
struct Rref {
  Matrix rows;                   // nonzero rows only, fully reduced
  std::vector<long> pivot_cols;  // pivot column of rows[i] is pivot_cols[i]
};
Rref rref_mod(Matrix rows, u64 q);

// Reduce `v` against an rref basis in place: subtract multiples of the rref
// rows so that v has zeros in every pivot column.
void reduce_against(Row& v, const Rref& basis, u64 q);

// Solve A x = b for one solution, if any (A given by rows; b column).
std::optional<Row> solve_mod(Matrix a, Row b, u64 q);

// Basis of the right kernel {x : A x = 0}.
Matrix kernel_basis_mod(Matrix a, u64 q);

}  // namespace ci
