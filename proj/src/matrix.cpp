#include "cnb/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace cnb {

namespace {

void require_finite(const std::vector<double>& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) throw NonFiniteError("matrix entry is not finite");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

Matrix::Matrix(int n) : n_(n), entries_(static_cast<size_t>(n) * n, 0.0) {
  if (n < 0) throw DimensionError("matrix dimension must be nonnegative");
}

Matrix::Matrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 0) throw DimensionError("matrix dimension must be nonnegative");
  if (entries_.size() != static_cast<size_t>(n) * n) {
    throw DimensionError("entry count " + std::to_string(entries_.size()) +
                         " does not match dimension " + std::to_string(n));
  }
  require_finite(entries_);
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.entries_[static_cast<size_t>(i) * n + i] = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(d[i])) throw NonFiniteError("diagonal entry is not finite");
    m.entries_[static_cast<size_t>(i) * n + i] = d[i];
  }
  return m;
}

Matrix Matrix::elementary(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw std::out_of_range("elementary matrix index (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside 1.." + std::to_string(n));
  }
  Matrix m(n);
  m.entries_[static_cast<size_t>(i - 1) * n + (j - 1)] = 1.0;
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "add");
  std::vector<double> out(a.entries());
  const auto& be = b.entries();
  for (size_t k = 0; k < out.size(); ++k) out[k] += be[k];
  return Matrix(a.dim(), std::move(out));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "subtract");
  std::vector<double> out(a.entries());
  const auto& be = b.entries();
  for (size_t k = 0; k < out.size(); ++k) out[k] -= be[k];
  return Matrix(a.dim(), std::move(out));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "multiply");
  const int n = a.dim();
  const auto& ae = a.entries();
  const auto& be = b.entries();
  std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = ae[static_cast<size_t>(i) * n + k];
      if (aik == 0.0) continue;
      const size_t brow = static_cast<size_t>(k) * n;
      const size_t orow = static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) out[orow + j] += aik * be[brow + j];
    }
  }
  return Matrix(n, std::move(out));
}

Matrix operator*(double s, const Matrix& a) {
  std::vector<double> out(a.entries());
  for (double& v : out) v *= s;
  return Matrix(a.dim(), std::move(out));
}

Matrix transpose(const Matrix& a) {
  const int n = a.dim();
  std::vector<double> out(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[static_cast<size_t>(j) * n + i] = a(i, j);
  return Matrix(n, std::move(out));
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "commutator");
  return x * y - y * x;
}

double frobenius_norm_sq(const Matrix& a) {
  double s = 0.0;
  for (double v : a.entries()) s += v * v;
  return s;
}

double frobenius_norm(const Matrix& a) { return std::sqrt(frobenius_norm_sq(a)); }

double trace_inner_product(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "trace_inner_product");
  const auto& ae = a.entries();
  const auto& be = b.entries();
  double s = 0.0;
  for (size_t k = 0; k < ae.size(); ++k) s += ae[k] * be[k];
  return s;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  const int n = a.dim();
  const double tol = rel_tol * max_abs(a);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

bool is_diagonal(const Matrix& a, double rel_tol) {
  const int n = a.dim();
  const double tol = rel_tol * max_abs(a);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(a(i, j)) > tol) return false;
  return true;
}

TriangularParts triangular_split(const Matrix& y) {
  const int n = y.dim();
  std::vector<double> d(static_cast<size_t>(n) * n, 0.0), u = d, l = d;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = y(i, j);
      const size_t k = static_cast<size_t>(i) * n + j;
      if (i == j) d[k] = v;
      else if (i < j) u[k] = v;
      else l[k] = v;
    }
  }
  return {Matrix(n, std::move(d)), Matrix(n, std::move(u)), Matrix(n, std::move(l))};
}

double offdiag_max_abs(const Matrix& y) {
  const int n = y.dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m = std::max(m, std::abs(y(i, j)));
  return m;
}

BlockPair::BlockPair(Matrix b_, Matrix c_) : b(std::move(b_)), c(std::move(c_)) {
  require_same_dim(b, c, "block pair");
}

double pair_norm_sq(const BlockPair& a) { return frobenius_norm_sq(a.b) + frobenius_norm_sq(a.c); }

double pair_inner_product(const BlockPair& a, const BlockPair& b) {
  return trace_inner_product(a.b, b.b) + trace_inner_product(a.c, b.c);
}

}  // namespace cnb
