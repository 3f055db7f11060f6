#include "berk/lattice.hpp"

namespace berk {

namespace {

// Unimodular elimination on columns [0, echelon_cols); rows are full width.
// Returns the number of pivot rows, which occupy the top of `m`.
std::size_t echelonize(std::vector<IntVector>& m, std::size_t echelon_cols, bool reduce_above) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < echelon_cols && pivot_row < m.size(); ++col) {
    for (std::size_t r = pivot_row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      if (m[pivot_row][col] == 0) {
        std::swap(m[pivot_row], m[r]);
        continue;
      }
      Integer a = m[pivot_row][col];
      Integer b = m[r][col];
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer ag = a / g;
      Integer bg = b / g;
      IntVector& p = m[pivot_row];
      IntVector& q = m[r];
      for (std::size_t k = 0; k < p.size(); ++k) {
        Integer np = s * p[k] + t * q[k];
        Integer nq = ag * q[k] - bg * p[k];
        p[k] = std::move(np);
        q[k] = std::move(nq);
      }
    }
    if (m[pivot_row][col] == 0) continue;
    if (m[pivot_row][col] < 0)
      for (auto& x : m[pivot_row]) x = -x;
    if (reduce_above) {
      const Integer& piv = m[pivot_row][col];
      for (std::size_t r = 0; r < pivot_row; ++r) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), piv.get_mpz_t());
        if (q == 0) continue;
        for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= q * m[pivot_row][k];
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::vector<IntVector> hermite_basis(std::vector<IntVector> rows, std::size_t ncols) {
  std::size_t rank = echelonize(rows, ncols, true);
  rows.resize(rank);
  return rows;
}

std::vector<IntVector> left_kernel(const std::vector<IntVector>& rows, std::size_t ncols) {
  const std::size_t m = rows.size();
  std::vector<IntVector> aug(m, IntVector(ncols + m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < ncols; ++k) aug[i][k] = rows[i][k];
    aug[i][ncols + i] = 1;
  }
  std::size_t rank = echelonize(aug, ncols, false);
  std::vector<IntVector> kernel;
  for (std::size_t i = rank; i < m; ++i)
    kernel.emplace_back(aug[i].begin() + static_cast<long>(ncols), aug[i].end());
  return hermite_basis(std::move(kernel), m);
}

}  // namespace berk
