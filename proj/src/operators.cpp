#include "cnb/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cnb/detail/vecops.hpp"
#include "cnb/rng.hpp"
#include "cnb/spectral.hpp"

namespace cnb {

Matrix t_apply(const Matrix& x, const Matrix& y) {
  if (x.dim() != y.dim()) throw DimensionError("t_apply: dimension mismatch");
  return commutator(transpose(x), commutator(x, y));
}

TOperator::TOperator(const Matrix& x)
    : n_(x.dim()),
      x_(x.entries()),
      xt_(static_cast<size_t>(n_) * n_),
      s1_(static_cast<size_t>(n_) * n_),
      s2_(static_cast<size_t>(n_) * n_) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) xt_[static_cast<size_t>(j) * n_ + i] = x_[static_cast<size_t>(i) * n_ + j];
}

void TOperator::apply(std::span<const double> y, std::span<double> out) const {
  const int n = n_;
  // s1 = [X, Y]
  detail::matmul(x_.data(), y.data(), s1_.data(), n);
  detail::matmul(y.data(), x_.data(), s2_.data(), n);
  for (size_t k = 0; k < s1_.size(); ++k) s1_[k] -= s2_[k];
  // out = [Xᵀ, s1]
  detail::matmul(xt_.data(), s1_.data(), out.data(), n);
  detail::matmul(s1_.data(), xt_.data(), s2_.data(), n);
  for (size_t k = 0; k < s1_.size(); ++k) out[k] -= s2_[k];
}

Matrix t_materialize(const Matrix& x) {
  const int n = x.dim();
  const int d = n * n;
  TOperator op(x);
  std::vector<double> basis(d, 0.0), image(d);
  std::vector<double> m(static_cast<size_t>(d) * d);
  for (int col = 0; col < d; ++col) {
    basis[col] = 1.0;
    op.apply(basis, image);
    basis[col] = 0.0;
    for (int row = 0; row < d; ++row) m[static_cast<size_t>(row) * d + col] = image[row];
  }
  return Matrix(d, std::move(m));
}

BlockPair tilde_apply(std::span<const double> lambda, const BlockPair& a) {
  const int n = a.dim();
  if (static_cast<int>(lambda.size()) != n) {
    throw DimensionError("tilde_apply: coefficient list length does not match pair dimension");
  }
  // D = ΛB - CΛ; Λ diagonal scales rows on the left, columns on the right.
  std::vector<double> d(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[static_cast<size_t>(i) * n + j] = lambda[i] * a.b(i, j) - a.c(i, j) * lambda[j];
  std::vector<double> bp(static_cast<size_t>(n) * n), cp(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dij = d[static_cast<size_t>(i) * n + j];
      bp[static_cast<size_t>(i) * n + j] = lambda[i] * dij;
      cp[static_cast<size_t>(i) * n + j] = -dij * lambda[j];
    }
  }
  return BlockPair(Matrix(n, std::move(bp)), Matrix(n, std::move(cp)));
}

double block_commutator_norm_sq(std::span<const double> lambda, const BlockPair& a) {
  const int n = a.dim();
  if (static_cast<int>(lambda.size()) != n) {
    throw DimensionError("block_commutator_norm_sq: coefficient list length mismatch");
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dij = lambda[i] * a.b(i, j) - a.c(i, j) * lambda[j];
      s += dij * dij;
    }
  }
  return s;
}

std::vector<double> pair_to_vec(const BlockPair& a) {
  const int nn = a.dim() * a.dim();
  std::vector<double> v(static_cast<size_t>(2) * nn);
  std::copy(a.c.entries().begin(), a.c.entries().end(), v.begin());
  std::copy(a.b.entries().begin(), a.b.entries().end(), v.begin() + nn);
  return v;
}

BlockPair vec_to_pair(std::span<const double> v, int n) {
  const size_t nn = static_cast<size_t>(n) * n;
  if (v.size() != 2 * nn) throw DimensionError("vec_to_pair: length is not 2n²");
  std::vector<double> c(v.begin(), v.begin() + nn), b(v.begin() + nn, v.end());
  return BlockPair(Matrix(n, std::move(b)), Matrix(n, std::move(c)));
}

Matrix tilde_materialize(std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  const int nn = n * n;
  const int d = 2 * nn;
  std::vector<double> m(static_cast<size_t>(d) * d);
  std::vector<double> basis(d, 0.0);
  for (int col = 0; col < d; ++col) {
    basis[col] = 1.0;
    const BlockPair image = tilde_apply(lambda, vec_to_pair(basis, n));
    basis[col] = 0.0;
    const std::vector<double> img = pair_to_vec(image);
    for (int row = 0; row < d; ++row) m[static_cast<size_t>(row) * d + col] = img[row];
  }
  return Matrix(d, std::move(m));
}

std::string to_string(EigenKind kind) {
  switch (kind) {
    case EigenKind::kDiagonalPair: return "diag";
    case EigenKind::kMixedPair: return "mixed";
    case EigenKind::kKernel: return "kernel";
  }
  return "?";
}

GenericityReport check_genericity(std::span<const double> lambda) {
  GenericityReport report;
  const int n = static_cast<int>(lambda.size());
  double s1 = 0.0;
  for (double s : lambda) s1 = std::max(s1, std::abs(s));
  const double s1_sq = s1 * s1;
  // Distinctness is tested on the squared values at 1e-9 relative to s1²; the
  // nonzero test runs at the linear scale 1e-9 * s1 so that a jitter of
  // magnitude 1e-6 (the perturbation contract) can always restore genericity.
  const double tol = 1e-9 * s1_sq;
  report.suggested_perturbation = 1e-6 * std::max(1.0, s1);

  for (int i = 0; i < n; ++i) {
    if (std::abs(lambda[i]) <= 1e-9 * s1) {
      report.violations.push_back("nonzero: s_" + std::to_string(i + 1) +
                                  " is zero (or below tolerance)");
      break;
    }
  }
  bool squares_ok = true;
  for (int i = 0; i < n && squares_ok; ++i) {
    for (int j = i + 1; j < n && squares_ok; ++j) {
      if (std::abs(lambda[i] * lambda[i] - lambda[j] * lambda[j]) <= tol) {
        report.violations.push_back("distinct-squares: s_" + std::to_string(i + 1) + "^2 and s_" +
                                    std::to_string(j + 1) + "^2 coincide");
        squares_ok = false;
      }
    }
  }
  // All pairwise sums s_i² + s_j² (i <= j) must be distinct as a multiset.
  std::vector<double> sums;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) sums.push_back(lambda[i] * lambda[i] + lambda[j] * lambda[j]);
  std::sort(sums.begin(), sums.end());
  for (size_t k = 0; k + 1 < sums.size(); ++k) {
    if (sums[k + 1] - sums[k] <= tol) {
      report.violations.push_back("distinct-pair-sums: two values s_i^2+s_j^2 coincide");
      break;
    }
  }

  report.is_generic = report.violations.empty();
  return report;
}

std::vector<double> perturb_to_generic(std::span<const double> lambda, std::uint64_t seed) {
  if (check_genericity(lambda).is_generic) return {lambda.begin(), lambda.end()};

  const int n = static_cast<int>(lambda.size());
  double s1 = 0.0;
  for (double s : lambda) s1 = std::max(s1, std::abs(s));
  const double eps = 1e-6 * std::max(1.0, s1);
  const bool descending = std::is_sorted(lambda.begin(), lambda.end(), std::greater<>());

  Rng root(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng = root.substream(attempt);
    std::vector<double> out(lambda.begin(), lambda.end());
    for (int i = 0; i < n; ++i) out[i] += eps * rng.uniform_open();
    if (descending) std::sort(out.begin(), out.end(), std::greater<>());
    if (check_genericity(out).is_generic) return out;
  }
  throw ConvergenceError("perturb_to_generic: no generic point found in 100 attempts", 0.0);
}

std::vector<PredictedEigenpair> closed_form_spectrum(std::span<const double> lambda) {
  const GenericityReport generic = check_genericity(lambda);
  if (!generic.is_generic) {
    std::ostringstream msg;
    msg << "closed_form_spectrum requires generic coefficients:";
    for (const auto& v : generic.violations) msg << ' ' << v << ';';
    throw GenericityError(msg.str(), generic);
  }

  const int n = static_cast<int>(lambda.size());
  std::vector<PredictedEigenpair> out;
  out.reserve(static_cast<size_t>(2) * n * n);
  constexpr double kInvSqrt2 = 0.70710678118654752440;

  for (int i = 1; i <= n; ++i) {
    const double s = lambda[i - 1];
    const Matrix e = Matrix::elementary(n, i, i);
    out.push_back({2.0 * s * s, EigenKind::kDiagonalPair, i, i,
                   BlockPair(kInvSqrt2 * e, -kInvSqrt2 * e)});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double si = lambda[i - 1], sj = lambda[j - 1];
      const double coeff = -sj / si;
      const double norm = std::sqrt(1.0 + coeff * coeff);
      const Matrix e = Matrix::elementary(n, i, j);
      out.push_back({si * si + sj * sj, EigenKind::kMixedPair, i, j,
                     BlockPair((1.0 / norm) * e, (coeff / norm) * e)});
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double coeff = lambda[i - 1] / lambda[j - 1];
      const double norm = std::sqrt(1.0 + coeff * coeff);
      const Matrix e = Matrix::elementary(n, i, j);
      out.push_back({0.0, EigenKind::kKernel, i, j,
                     BlockPair((1.0 / norm) * e, (coeff / norm) * e)});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const PredictedEigenpair& a, const PredictedEigenpair& b) { return a.value > b.value; });
  return out;
}

namespace {

double eigenpair_residual(std::span<const double> lambda, const PredictedEigenpair& p) {
  const BlockPair image = tilde_apply(lambda, p.vector);
  double s = 0.0;
  const int n = p.vector.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double db = image.b(i, j) - p.value * p.vector.b(i, j);
      const double dc = image.c(i, j) - p.value * p.vector.c(i, j);
      s += db * db + dc * dc;
    }
  }
  return std::sqrt(s);
}

std::vector<MultiplicityCluster> cluster_values(const std::vector<double>& values, double gap) {
  std::vector<MultiplicityCluster> out;
  size_t lo = 0;
  while (lo < values.size()) {
    size_t hi = lo + 1;
    while (hi < values.size() && values[hi - 1] - values[hi] < gap) ++hi;
    out.push_back({values[lo], static_cast<int>(hi - lo)});
    lo = hi;
  }
  return out;
}

}  // namespace

SpectrumReport spectrum_report(std::span<const double> lambda, const SpectrumOptions& opts) {
  SpectrumReport report;
  report.n = static_cast<int>(lambda.size());
  report.sigma_input.assign(lambda.begin(), lambda.end());

  GenericityReport generic = check_genericity(lambda);
  if (!generic.is_generic) {
    if (!opts.allow_perturbation) {
      std::ostringstream msg;
      msg << "spectrum_report: coefficients are not generic:";
      for (const auto& v : generic.violations) msg << ' ' << v << ';';
      throw GenericityError(msg.str(), generic);
    }
    report.sigma_used = perturb_to_generic(lambda, opts.seed);
    report.perturbed = true;
  } else {
    report.sigma_used = report.sigma_input;
  }
  const std::span<const double> sig(report.sigma_used);

  report.predicted = closed_form_spectrum(sig);
  for (const auto& p : report.predicted) {
    report.max_eigenvector_residual =
        std::max(report.max_eigenvector_residual, eigenpair_residual(sig, p));
  }

  const EigenResult numeric = symmetric_eigen(tilde_materialize(sig));
  report.computed = numeric.values;
  for (size_t k = 0; k < report.computed.size(); ++k) {
    report.eigenvalue_multiset_distance = std::max(
        report.eigenvalue_multiset_distance, std::abs(report.computed[k] - report.predicted[k].value));
  }

  double s1_sq = 0.0;
  for (double s : sig) s1_sq = std::max(s1_sq, s * s);
  report.multiplicity = cluster_values(report.computed, 1e-9 * s1_sq);

  if (report.n >= 2) {
    // Mixed eigenvector supported on entry (2,1) at λ = s₁² + s₂²: solving the
    // entrywise equations gives coefficient -s₁/s₂; the index-mirrored -s₂/s₁
    // is kept as a negative control.
    const double s1 = sig[0], s2 = sig[1];
    SecondPairCertification cert;
    cert.eigenvalue = s1 * s1 + s2 * s2;
    cert.derived_coefficient = -s1 / s2;
    cert.mirrored_coefficient = -s2 / s1;
    const Matrix e21 = Matrix::elementary(report.n, 2, 1);
    auto residual_for = [&](double coeff) {
      const double norm = std::sqrt(1.0 + coeff * coeff);
      PredictedEigenpair p{cert.eigenvalue, EigenKind::kMixedPair, 2, 1,
                           BlockPair((1.0 / norm) * e21, (coeff / norm) * e21)};
      return eigenpair_residual(sig, p);
    };
    cert.derived_residual = residual_for(cert.derived_coefficient);
    cert.mirrored_residual = residual_for(cert.mirrored_coefficient);
    report.certification = cert;
  }

  return report;
}

}  // namespace cnb
