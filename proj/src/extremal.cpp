#include "cnb/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cnb/detail/vecops.hpp"
#include "cnb/spectral.hpp"

namespace cnb {

namespace {

// Sign convention for reported extremizers: largest-magnitude entry positive.
Matrix sign_fixed(const Matrix& y) {
  const auto& e = y.entries();
  size_t pivot = 0;
  for (size_t k = 1; k < e.size(); ++k)
    if (std::abs(e[k]) > std::abs(e[pivot])) pivot = k;
  if (e.empty() || e[pivot] >= 0.0) return y;
  return -1.0 * y;
}

double eigen_residual(const Matrix& x, const Matrix& y, double lambda) {
  return frobenius_norm(t_apply(x, y) - lambda * y);
}

}  // namespace

ExtremalResult find_extremal(const Matrix& x, ExtremalMode mode) {
  const int n = x.dim();
  if (frobenius_norm_sq(x) == 0.0) {
    throw std::invalid_argument("find_extremal: X is zero; the maximum is 0 with no direction");
  }

  ExtremalResult result;
  if (mode == ExtremalMode::kDense) {
    const EigenResult eig = symmetric_eigen(t_materialize(x));
    result.lambda_max = eig.values.front();
    result.y_star = Matrix(n, eig.vector(0));
    result.iterations = 0;
  } else {
    TOperator op(x);
    const PowerResult pr = power_iteration(
        [&op](std::span<const double> in, std::span<double> out) { op.apply(in, out); }, n * n);
    result.lambda_max = pr.value;
    result.y_star = Matrix(n, pr.vector);
    result.iterations = pr.iterations;
  }

  // T_X vanishes exactly when X is a multiple of the identity; there is no
  // maximizing direction to report in that case.
  if (result.lambda_max <= 1e-12 * frobenius_norm_sq(x)) {
    throw std::invalid_argument("find_extremal: the commutator operator of X is zero");
  }

  result.y_star = sign_fixed(result.y_star);
  const double norm = frobenius_norm(result.y_star);
  result.y_star = (1.0 / norm) * result.y_star;
  result.residual = eigen_residual(x, result.y_star, result.lambda_max);
  return result;
}

ExtremalResult find_extremal(const Matrix& x) {
  return find_extremal(x, x.dim() <= 12 ? ExtremalMode::kDense : ExtremalMode::kMatrixFree);
}

CompanionCheck companion_check(const Matrix& x, const Matrix& y, double lambda_prime) {
  if (x.dim() != y.dim()) throw DimensionError("companion_check: dimension mismatch");
  const double y_norm = frobenius_norm(y);
  const double scale = std::max(1.0, std::abs(lambda_prime)) * std::max(1.0, y_norm);
  if (eigen_residual(x, y, lambda_prime) > 1e-6 * scale) {
    throw std::invalid_argument("companion_check: (y, lambda) is not an approximate eigenpair");
  }

  CompanionCheck check;
  check.companion = commutator(transpose(x), transpose(y));
  const double w_norm = frobenius_norm(check.companion);
  if (w_norm == 0.0) {
    check.is_eigen = true;  // vacuously: T(0) = λ·0
    check.independent = false;
    return check;
  }

  const double w_scale = std::max(1.0, std::abs(lambda_prime)) * std::max(1.0, w_norm);
  check.is_eigen = eigen_residual(x, check.companion, lambda_prime) <= 1e-6 * w_scale;

  // Gram determinant of the normalized pair; 1 - cos² of the angle.
  const double cosang = trace_inner_product(y, check.companion) / (y_norm * w_norm);
  check.independent = 1.0 - cosang * cosang > 1e-8;
  return check;
}

ChangeOfVariables change_of_variables(const Matrix& x, const Matrix& y) {
  if (x.dim() != y.dim()) throw DimensionError("change_of_variables: dimension mismatch");
  const SvdResult s = svd(x);
  // X = Q₁ Λ Q₂ with both factors orthogonal, so Q₂⁻¹ = Q₂ᵀ and Q₁⁻¹ = Q₁ᵀ.
  Matrix b = s.q2 * y * transpose(s.q2);
  Matrix c = transpose(s.q1) * y * s.q1;
  return {s.sigma, BlockPair(std::move(b), std::move(c))};
}

Matrix orthogonalize_z(const Matrix& x, const Matrix& y) {
  if (x.dim() != y.dim()) throw DimensionError("orthogonalize_z: dimension mismatch");

  const double y_norm = frobenius_norm(y);
  if (y_norm == 0.0) throw std::invalid_argument("orthogonalize_z: y is zero");
  const double lambda = trace_inner_product(y, t_apply(x, y)) / (y_norm * y_norm);
  if (eigen_residual(x, y, lambda) > 1e-6 * std::max(1.0, std::abs(lambda)) * std::max(1.0, y_norm)) {
    throw std::invalid_argument("orthogonalize_z: y is not an approximate eigenvector");
  }

  const SvdResult s = svd(x);
  const GenericityReport generic = check_genericity(s.sigma);
  if (!generic.is_generic) {
    throw GenericityError("orthogonalize_z: the singular values of X are not generic", generic);
  }

  // Inner product of the block-pair image of Z against the top eigenvector
  // (E₁₁, -E₁₁), up to the constant normalization: B₁₁ - C₁₁. Linear in Z.
  auto top_component = [&](const Matrix& z) {
    const Matrix b = s.q2 * z * transpose(s.q2);
    const Matrix c = transpose(s.q1) * z * s.q1;
    return b(0, 0) - c(0, 0);
  };

  const Matrix w = commutator(transpose(x), transpose(y));
  const double g_y = top_component(y);
  const double g_w = top_component(w);

  const double w_norm = frobenius_norm(w);
  const double cosang = w_norm > 0.0 ? trace_inner_product(y, w) / (y_norm * w_norm) : 1.0;
  const bool degenerate = w_norm <= 1e-12 * y_norm || 1.0 - cosang * cosang <= 1e-12;

  const double tiny = 1e-14 * std::max(1.0, y_norm + w_norm);
  if (degenerate) {
    if (std::abs(g_y) <= tiny) return (1.0 / y_norm) * y;  // image already orthogonal
    throw std::runtime_error(
        "orthogonalize_z: companion is dependent on y and y's image is not orthogonal");
  }

  // Null vector of the single linear condition g_y α + g_w β = 0.
  double alpha = -g_w, beta = g_y;
  if (std::abs(g_y) <= tiny && std::abs(g_w) <= tiny) {
    alpha = 1.0;  // any combination works; keep Z = Y
    beta = 0.0;
  }
  Matrix z = alpha * y + beta * w;
  const double z_norm = frobenius_norm(z);
  if (z_norm <= tiny) throw std::runtime_error("orthogonalize_z: degenerate combination");
  return (1.0 / z_norm) * z;
}

EqualityCertificate certify_equality_pair(const Matrix& x) {
  const double x_norm_sq = frobenius_norm_sq(x);
  if (x_norm_sq == 0.0) throw std::invalid_argument("certify_equality_pair: X is zero");

  EqualityCertificate cert;
  try {
    cert.certificate = find_extremal(x);
  } catch (const std::invalid_argument&) {
    // Zero commutator operator (X a multiple of the identity): the ratio is 0
    // by convention and any unit matrix witnesses ||[X, Y]|| = 0.
    cert.achieved_ratio = 0.0;
    cert.certificate.y_star = Matrix::elementary(x.dim(), 1, 1);
    cert.certificate.lambda_max = 0.0;
    cert.certificate.residual = 0.0;
    cert.certificate.iterations = 0;
    return cert;
  }
  cert.achieved_ratio = cert.certificate.lambda_max / (2.0 * x_norm_sq);
  return cert;
}

}  // namespace cnb
