#include "jetinv/expr/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace jetinv {

std::size_t row_reduce(RationalMatrix& m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::size_t rank(RationalMatrix m) { return row_reduce(m); }

Rational determinant(RationalMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::optional<std::vector<Rational>> solve_in_span(const RationalMatrix& rows,
                                                   const std::vector<Rational>& target) {
  // Columns of the system are the given rows; augment with the target.
  std::size_t k = rows.size(), n = target.size();
  RationalMatrix a(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = rows[j].at(i);
    a[i][k] = target[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c <= k && r < n; ++c) {
    std::size_t pivot = r;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) continue;
    if (c == k) return std::nullopt;  // inconsistent
    std::swap(a[pivot], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j <= k; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<Rational> x(k, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = a[i][k];
  return x;
}

}  // namespace jetinv
