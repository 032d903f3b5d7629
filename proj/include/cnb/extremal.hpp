#pragma once

#include <vector>

#include "cnb/matrix.hpp"
#include "cnb/operators.hpp"

namespace cnb {

// Dense materializes the operator and runs the Jacobi eigensolver (default up
// to n = 12, operator dimension 144); MatrixFree runs power iteration on the
// operator application and scales further.
enum class ExtremalMode { kDense, kMatrixFree };

// The unit-norm maximizer of ||[X, Y]|| over Y and the achieved maximum.
struct ExtremalResult {
  Matrix y_star;          // unit Frobenius norm; largest-magnitude entry positive
  double lambda_max = 0;  // max ||[X, Y]||² over ||Y|| = 1
  double residual = 0;    // ||T_X(Y*) - lambda_max Y*||
  long iterations = 0;    // power-iteration count (0 on the dense path)
};

// Dominant eigenpair of the commutator operator for fixed X. Throws
// std::invalid_argument when X is zero or a multiple of the identity (the
// operator vanishes and no maximizing direction exists), ConvergenceError on
// solver stall.
ExtremalResult find_extremal(const Matrix& x, ExtremalMode mode);
ExtremalResult find_extremal(const Matrix& x);  // dense for n <= 12

struct CompanionCheck {
  bool is_eigen = false;     // [Xᵀ, Yᵀ] is an eigenvector at the same eigenvalue
  bool independent = false;  // ... and linearly independent of Y
  Matrix companion;          // W = [Xᵀ, Yᵀ]
};

// Checks that W = [Xᵀ, Yᵀ] is again an eigenvector of the commutator operator
// at lambda_prime and is independent of Y. Requires (y, lambda_prime) to
// satisfy the eigenvector equation to residual 1e-6 (relative); W = 0 counts
// as vacuously an eigenvector but not independent.
CompanionCheck companion_check(const Matrix& x, const Matrix& y, double lambda_prime);

// The change of variables induced by the SVD X = Q₁ Λ Q₂: B = Q₂ Y Q₂ᵀ and
// C = Q₁ᵀ Y Q₁. Norms of B and C equal ||Y||, and ||Λ B - C Λ||² = ||[X, Y]||².
struct ChangeOfVariables {
  std::vector<double> lambda;  // singular values, descending
  BlockPair pair;              // (B, C)
};
ChangeOfVariables change_of_variables(const Matrix& x, const Matrix& y);

// Given a dominant eigenvector Y of the commutator operator, returns the
// unit-norm combination Z = αY + β[Xᵀ, Yᵀ] whose block-pair image under
// change_of_variables is orthogonal to the top eigenvector (E₁₁, -E₁₁) of the
// block operator. Requires X generic (perturb X first if not); when Y and its
// companion are linearly dependent the fallback is Z = Y, valid whenever Y's
// image is already orthogonal.
Matrix orthogonalize_z(const Matrix& x, const Matrix& y);

struct EqualityCertificate {
  double achieved_ratio = 0.0;  // lambda_max / (2 ||X||²), in [0, 1]; 1 means equality attained
  ExtremalResult certificate;
};

// Tightness of the 2||X||²||Y||² bound for this X. A zero commutator operator
// (X a multiple of the identity) reports ratio 0 with a trivial certificate.
EqualityCertificate certify_equality_pair(const Matrix& x);

}  // namespace cnb
