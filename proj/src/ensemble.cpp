#include "cnb/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "cnb/detail/vecops.hpp"

namespace cnb {

EnsembleKind parse_ensemble_kind(std::string_view name) {
  if (name == "gaussian") return EnsembleKind::kGaussian;
  if (name == "symmetric") return EnsembleKind::kSymmetric;
  if (name == "diagonal") return EnsembleKind::kDiagonal;
  if (name == "orthogonal-conjugated-diagonal" || name == "ocd") {
    return EnsembleKind::kOrthogonalConjugatedDiagonal;
  }
  if (name == "nilpotent-upper") return EnsembleKind::kNilpotentUpper;
  throw std::invalid_argument("unknown ensemble kind: " + std::string(name));
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kGaussian: return "gaussian";
    case EnsembleKind::kSymmetric: return "symmetric";
    case EnsembleKind::kDiagonal: return "diagonal";
    case EnsembleKind::kOrthogonalConjugatedDiagonal: return "orthogonal-conjugated-diagonal";
    case EnsembleKind::kNilpotentUpper: return "nilpotent-upper";
  }
  return "?";
}

Matrix random_orthogonal(int n, Rng& rng) {
  // Modified Gram-Schmidt on gaussian columns. A rank-deficient draw has
  // probability zero; the deterministic fallback below keeps the factor
  // orthogonal even then.
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cols[j][i] = rng.gaussian();

  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) detail::axpy(cols[j], -detail::dot(cols[j], cols[k]), cols[k]);
    double nj = detail::norm(cols[j]);
    if (nj <= 1e-12) {
      for (int e = 0; e < n; ++e) {
        std::vector<double> r(n, 0.0);
        r[e] = 1.0;
        for (int k = 0; k < j; ++k) detail::axpy(r, -detail::dot(r, cols[k]), cols[k]);
        if (detail::norm(r) > 0.5) {
          cols[j] = std::move(r);
          break;
        }
      }
      nj = detail::norm(cols[j]);
    }
    detail::scale(cols[j], 1.0 / nj);
  }

  std::vector<double> entries(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entries[static_cast<size_t>(i) * n + j] = cols[j][i];
  return Matrix(n, std::move(entries));
}

Matrix draw(const EnsembleSpec& spec, std::uint64_t index) {
  const int n = spec.n;
  if (n <= 0) throw std::invalid_argument("ensemble dimension must be positive");
  Rng rng = Rng(spec.seed).substream(index);

  switch (spec.kind) {
    case EnsembleKind::kGaussian: {
      std::vector<double> e(static_cast<size_t>(n) * n);
      for (double& v : e) v = rng.gaussian();
      return Matrix(n, std::move(e));
    }
    case EnsembleKind::kSymmetric: {
      std::vector<double> g(static_cast<size_t>(n) * n);
      for (double& v : g) v = rng.gaussian();
      std::vector<double> e(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          // identical expression for (i,j) and (j,i): exact symmetry
          e[static_cast<size_t>(i) * n + j] =
              0.5 * (g[static_cast<size_t>(std::min(i, j)) * n + std::max(i, j)] +
                     g[static_cast<size_t>(std::max(i, j)) * n + std::min(i, j)]);
        }
      }
      return Matrix(n, std::move(e));
    }
    case EnsembleKind::kDiagonal: {
      std::vector<double> d(n);
      for (double& v : d) v = rng.gaussian();
      return Matrix::diagonal(d);
    }
    case EnsembleKind::kOrthogonalConjugatedDiagonal: {
      std::vector<double> d(n);
      for (double& v : d) v = rng.gaussian();
      const Matrix q = random_orthogonal(n, rng);
      const Matrix m = q * Matrix::diagonal(d) * transpose(q);
      // Enforce exact symmetry on top of the O(eps) rounding asymmetry.
      std::vector<double> e(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          e[static_cast<size_t>(i) * n + j] = 0.5 * (m(std::min(i, j), std::max(i, j)) +
                                                     m(std::max(i, j), std::min(i, j)));
      return Matrix(n, std::move(e));
    }
    case EnsembleKind::kNilpotentUpper: {
      std::vector<double> e(static_cast<size_t>(n) * n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e[static_cast<size_t>(i) * n + j] = rng.gaussian();
      return Matrix(n, std::move(e));
    }
  }
  throw std::logic_error("unreachable ensemble kind");
}

}  // namespace cnb
