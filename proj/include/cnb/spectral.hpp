#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cnb/matrix.hpp"

namespace cnb {

// Full eigendecomposition of a symmetric matrix. values are descending;
// column k of vectors is the eigenvector for values[k]. Within a numerically
// coincident cluster (gap below 1e-9 * ||M||) the vectors are ordered by the
// index of their largest-magnitude component, with that component made
// positive, so repeated eigenvalues still produce reproducible reports.
struct EigenResult {
  std::vector<double> values;
  Matrix vectors;

  std::vector<double> vector(int k) const;
};

// Cyclic Jacobi with a cap of 60 sweeps; converged when the off-diagonal
// Frobenius mass falls below 1e-14 * ||M||. The input must be symmetric to
// entrywise 1e-12 (relative); it is symmetrized before iterating. Throws
// ConvergenceError past the sweep cap.
EigenResult symmetric_eigen(const Matrix& m);

// x = q1 * diag(sigma) * q2 with q1, q2 orthogonal and sigma descending.
// Singular values below 1e-13 * sigma[0] are clamped to exactly zero.
struct SvdResult {
  Matrix q1;
  std::vector<double> sigma;
  Matrix q2;
};

// One-sided Jacobi (Hestenes) on the columns; same 60-sweep cap.
SvdResult svd(const Matrix& x);

struct PowerOptions {
  double tol = 1e-9;             // residual target: ||Tv - lv|| <= tol * max(1, l)
  long max_iterations = 2000000;
  std::uint64_t seed = 0x9e3779b9;  // start-vector seed (deterministic Gaussian)
};

struct PowerResult {
  double value = 0.0;
  std::vector<double> vector;
  long iterations = 0;
  double residual = 0.0;
};

// Applies the operator to `in`, writing to `out` (same length, may not alias).
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

// Dominant eigenpair of a symmetric positive semidefinite operator restricted
// to the orthogonal complement of deflate_against (which must be orthonormal).
// The iterate is re-orthogonalized against the deflation set every step.
// Throws ConvergenceError (with the last residual) past the iteration cap.
PowerResult power_iteration(const LinearOperator& apply, int dim,
                            const std::vector<std::vector<double>>& deflate_against = {},
                            const PowerOptions& opts = {});

}  // namespace cnb
