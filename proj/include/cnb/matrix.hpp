#pragma once

#include <span>
#include <vector>

#include "cnb/errors.hpp"

namespace cnb {

// Dense real square matrix, row-major storage. Entries are validated to be
// finite at construction and instances are immutable values afterwards, so
// they can be shared freely across threads.
//
// Vectorization convention used everywhere in this library:
//   vec(Y)[i*n + j] = y_ij
// which coincides with the storage order, so entries() doubles as vec(Y).
class Matrix {
 public:
  Matrix() = default;

  // Zero matrix of dimension n.
  explicit Matrix(int n);

  // Takes ownership of row-major entries; throws DimensionError if the length
  // is not n*n and NonFiniteError on NaN/Inf.
  Matrix(int n, std::vector<double> entries);

  static Matrix identity(int n);
  static Matrix diagonal(std::span<const double> d);

  // E_ij with 1-based indices (the usual convention for elementary matrices);
  // throws std::out_of_range outside [1, n].
  static Matrix elementary(int n, int i, int j);

  int dim() const noexcept { return n_; }

  // 0-based element access, unchecked.
  double operator()(int i, int j) const noexcept { return entries_[static_cast<size_t>(i) * n_ + j]; }

  const std::vector<double>& entries() const noexcept { return entries_; }

  bool operator==(const Matrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> entries_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);  // matrix product
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);

// XY - YX.
Matrix commutator(const Matrix& x, const Matrix& y);

// Sum of squared entries (squared Frobenius norm) and its square root.
double frobenius_norm_sq(const Matrix& a);
double frobenius_norm(const Matrix& a);

// tr(AᵀB); equals the entrywise dot product.
double trace_inner_product(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& a);

// Predicates with tolerance relative to the largest entry magnitude (a zero
// matrix is both symmetric and diagonal).
bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);
bool is_diagonal(const Matrix& a, double rel_tol = 1e-12);

// Y = diagonal + strictly upper + strictly lower, with disjoint supports.
struct TriangularParts {
  Matrix diagonal;
  Matrix upper;
  Matrix lower;
};
TriangularParts triangular_split(const Matrix& y);

// max_{i != j} |y_ij|; defined as 0 for n <= 1 so that bounds built on it
// degrade gracefully.
double offdiag_max_abs(const Matrix& y);

// A pair (B, C) of equally sized matrices, identified with the block-diagonal
// matrix diag(C, B); its squared norm is ||B||^2 + ||C||^2.
struct BlockPair {
  Matrix b;
  Matrix c;

  BlockPair(Matrix b_, Matrix c_);

  int dim() const noexcept { return b.dim(); }
};

double pair_norm_sq(const BlockPair& a);
double pair_inner_product(const BlockPair& a, const BlockPair& b);

}  // namespace cnb
