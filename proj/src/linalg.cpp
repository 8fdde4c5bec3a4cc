#include "ci/linalg.hpp"

#include <stdexcept>

#include "ci/kernels.hpp"

namespace ci {

namespace {

u64 inv_mod(u64 a, u64 q) { return Fq(q).pow(a % q, q - 2); }

}  // namespace

long rank_mod_inplace(Matrix& rows, u64 q, long target) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  long rank = 0;
  std::size_t row_start = 0;
  for (std::size_t col = 0; col < ncols && row_start < rows.size(); ++col) {
    // find pivot
    std::size_t pivot = row_start;
    while (pivot < rows.size() && rows[pivot][col] % q == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row_start], rows[pivot]);
    const u64 inv = inv_mod(rows[row_start][col], q);
    kernels::scale_mod(rows[row_start].data() + col, ncols - col, inv, q);
    for (std::size_t r = row_start + 1; r < rows.size(); ++r) {
      const u64 f = rows[r][col] % q;
      if (f == 0) continue;
      kernels::axpy_mod(rows[r].data() + col, rows[row_start].data() + col,
                        ncols - col, q - f, q);
    }
    ++row_start;
    ++rank;
    if (target >= 0 && rank >= target) return rank;
  }
  return rank;
}

long rank_mod(Matrix rows, u64 q, long target) {
  return rank_mod_inplace(rows, q, target);
}

Rref rref_mod(Matrix rows, u64 q) {
  Rref out;
  if (rows.empty()) return out;
  const std::size_t ncols = rows[0].size();
  std::size_t row_start = 0;
  for (std::size_t col = 0; col < ncols && row_start < rows.size(); ++col) {
    std::size_t pivot = row_start;
    while (pivot < rows.size() && rows[pivot][col] % q == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row_start], rows[pivot]);
    const u64 inv = inv_mod(rows[row_start][col], q);
    kernels::scale_mod(rows[row_start].data(), ncols, inv, q);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == row_start) continue;
      const u64 f = rows[r][col] % q;
      if (f == 0) continue;
      kernels::axpy_mod(rows[r].data(), rows[row_start].data(), ncols, q - f,
                        q);
    }
    out.pivot_cols.push_back(static_cast<long>(col));
    ++row_start;
  }
  rows.resize(row_start);
  out.rows = std::move(rows);
  return out;
}

void reduce_against(Row& v, const Rref& basis, u64 q) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    const u64 f = v[static_cast<std::size_t>(basis.pivot_cols[i])] % q;
    if (f == 0) continue;
    kernels::axpy_mod(v.data(), basis.rows[i].data(), v.size(), q - f, q);
  }
}

std::optional<Row> solve_mod(Matrix a, Row b, u64 q) {
  if (a.empty()) {
    for (u64 x : b)
      if (x % q != 0) return std::nullopt;
    return Row{};
  }
  const std::size_t n = a[0].size();
  if (a.size() != b.size())
    throw std::invalid_argument("solve_mod: dimension mismatch");
  // augmented matrix
  Matrix aug = std::move(a);
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i] % q);
  Rref rr = rref_mod(std::move(aug), q);
  Row x(n, 0);
  for (std::size_t i = 0; i < rr.rows.size(); ++i) {
    const long pc = rr.pivot_cols[i];
    if (pc == static_cast<long>(n)) return std::nullopt;  // 0 = nonzero row
    x[static_cast<std::size_t>(pc)] = rr.rows[i][n];
  }
  return x;
}

Matrix kernel_basis_mod(Matrix a, u64 q) {
  if (a.empty()) return {};
  const std::size_t n = a[0].size();
  Rref rr = rref_mod(std::move(a), q);
  std::vector<bool> is_pivot(n, false);
  for (long pc : rr.pivot_cols) is_pivot[static_cast<std::size_t>(pc)] = true;
  Matrix basis;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    Row v(n, 0);
    v[free_col] = 1;
    for (std::size_t i = 0; i < rr.rows.size(); ++i) {
      const u64 coef = rr.rows[i][free_col] % q;
      if (coef)
        v[static_cast<std::size_t>(rr.pivot_cols[i])] = (q - coef) % q;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ci
