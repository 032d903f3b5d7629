#include "cnb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cnb/spectral.hpp"

namespace cnb {

namespace {

void require_same_dim(const Matrix& x, const Matrix& y, const char* op) {
  if (x.dim() != y.dim()) throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

double bw_bound(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "bw_bound");
  return 2.0 * frobenius_norm_sq(x) * frobenius_norm_sq(y);
}

double kyfan_bound(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "kyfan_bound");
  if (x.dim() < 2) return 0.0;  // 1x1 commutators vanish
  const SvdResult s = svd(x);
  return 2.0 * (s.sigma[0] * s.sigma[0] + s.sigma[1] * s.sigma[1]) * frobenius_norm_sq(y);
}

double cdck_bound(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "cdck_bound");
  if (!is_symmetric(x)) throw ApplicabilityError("cdck_bound: X must be symmetric");
  const EigenResult e = symmetric_eigen(x);
  const double spread = e.values.front() - e.values.back();
  return spread * spread * frobenius_norm_sq(y);
}

double infnorm_bound(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "infnorm_bound");
  if (!is_diagonal(x)) throw ApplicabilityError("infnorm_bound: X must be diagonal");
  const double m = offdiag_max_abs(y);
  return frobenius_norm_sq(x) * (frobenius_norm_sq(y) + 2.0 * m * m);
}

std::pair<double, double> scalar_inequality_check(std::span<const double> lambdas, const Matrix& y) {
  const int n = y.dim();
  if (static_cast<int>(lambdas.size()) != n) {
    throw DimensionError("scalar_inequality_check: coefficient list length mismatch");
  }
  if (!is_symmetric(y)) throw ApplicabilityError("scalar_inequality_check: y must be symmetric");

  double lhs = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = lambdas[i] - lambdas[j];
      lhs += d * d * y(i, j) * y(i, j);
    }
  }
  lhs *= 2.0;

  double sum_sq = 0.0;
  for (double l : lambdas) sum_sq += l * l;
  double below = 0.0, max_below = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      below += y(i, j) * y(i, j);
      max_below = std::max(max_below, y(i, j) * y(i, j));
    }
  }
  return {lhs, sum_sq * (2.0 * below + 2.0 * max_below)};
}

std::pair<double, double> cdck_vs_kyfan_gap(std::span<const double> lambdas) {
  const int n = static_cast<int>(lambdas.size());
  if (n < 2) throw DimensionError("cdck_vs_kyfan_gap: needs at least two values");
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  const double spread = *hi - *lo;

  // 2 max_{i≠j} (λ_i² + λ_j²) = 2 (top two squared magnitudes).
  double first = 0.0, second = 0.0;
  for (double l : lambdas) {
    const double sq = l * l;
    if (sq >= first) {
      second = first;
      first = sq;
    } else if (sq > second) {
      second = sq;
    }
  }
  return {spread * spread, 2.0 * (first + second)};
}

PythagoreanSplit pythagorean_split_check(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "pythagorean_split_check");
  if (!is_diagonal(x)) throw ApplicabilityError("pythagorean_split_check: X must be diagonal");
  const TriangularParts parts = triangular_split(y);
  return {frobenius_norm_sq(commutator(x, y)), frobenius_norm_sq(commutator(x, parts.upper)),
          frobenius_norm_sq(commutator(x, parts.lower))};
}

namespace {

BoundEntry make_entry(const std::string& name, double lhs, double value, double tol) {
  BoundEntry e;
  e.name = name;
  e.applicable = true;
  e.value = value;
  e.ratio = value > 0.0 ? lhs / value : (lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  e.equality = std::abs(lhs - value) <= tol * std::max(std::abs(lhs), std::abs(value));
  return e;
}

}  // namespace

BoundReport evaluate_all(const Matrix& x, const Matrix& y, double equality_tol) {
  require_same_dim(x, y, "evaluate_all");
  BoundReport report;
  report.n = x.dim();
  report.lhs = frobenius_norm_sq(commutator(x, y));

  report.entries.push_back(make_entry("bw", report.lhs, bw_bound(x, y), equality_tol));
  report.entries.push_back(make_entry("kyfan", report.lhs, kyfan_bound(x, y), equality_tol));
  if (is_symmetric(x)) {
    report.entries.push_back(make_entry("cdck", report.lhs, cdck_bound(x, y), equality_tol));
  } else {
    report.entries.push_back({"cdck", false, 0.0, 0.0, false});
  }
  if (is_diagonal(x)) {
    report.entries.push_back(make_entry("infnorm", report.lhs, infnorm_bound(x, y), equality_tol));
  } else {
    report.entries.push_back({"infnorm", false, 0.0, 0.0, false});
  }

  double best = 0.0;
  for (const auto& e : report.entries) {
    if (!e.applicable) continue;
    if (report.tightest.empty() || e.value < best) {
      report.tightest = e.name;
      best = e.value;
    }
  }
  return report;
}

}  // namespace cnb
