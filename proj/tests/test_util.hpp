#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "cnb/matrix.hpp"

namespace cnb::testutil {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows)
    for (double v : row) entries.push_back(v);
  return Matrix(n, std::move(entries));
}

inline double max_entry_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  return a.dim() == b.dim() && max_entry_diff(a, b) <= tol;
}

}  // namespace cnb::testutil
