#pragma once

#include <cmath>
#include <cstddef>
#include <span>

// Small raw-buffer helpers shared by the iterative kernels.

namespace cnb::detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm_sq(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

inline void scale(std::span<double> a, double s) {
  for (double& v : a) v *= s;
}

// a += s * b
inline void axpy(std::span<double> a, double s, std::span<const double> b) {
  for (size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
}

// c = a * b for row-major square matrices of dimension n.
inline void matmul(const double* a, const double* b, double* c, int n) {
  for (int i = 0; i < n; ++i) {
    double* crow = c + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) crow[j] = 0.0;
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<size_t>(i) * n + k];
      if (aik == 0.0) continue;
      const double* brow = b + static_cast<size_t>(k) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace cnb::detail
