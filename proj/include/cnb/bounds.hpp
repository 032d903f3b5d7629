#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cnb/matrix.hpp"

namespace cnb {

// 2 ||X||² ||Y||²; holds for every real square pair with constant 2 optimal
// (the Böttcher-Wenzel inequality).
double bw_bound(const Matrix& x, const Matrix& y);

// 2 (s₁² + s₂²) ||Y||² with s₁ ≥ s₂ the two largest singular values of X
// (Ky Fan (2,(2)) strengthening); never exceeds bw_bound. Defined as 0 for
// n = 1, where commutators vanish.
double kyfan_bound(const Matrix& x, const Matrix& y);

// (λ₁ - λₙ)² ||Y||² for symmetric X with extreme eigenvalues λ₁, λₙ
// (Chern–do Carmo–Kobayashi). Throws ApplicabilityError unless X is symmetric
// to 1e-12 relative.
double cdck_bound(const Matrix& x, const Matrix& y);

// ||X||² (||Y||² + 2 max_{i≠j} y_ij²) for diagonal X. Throws
// ApplicabilityError unless X is diagonal to 1e-12 relative.
double infnorm_bound(const Matrix& x, const Matrix& y);

// Both sides of the scalar inequality behind the diagonal-X bound, evaluated
// verbatim for a symmetric y:
//   lhs = 2 Σ_{i<j} (λ_i - λ_j)² y_ij²
//   rhs = (Σ λ_j²) (2 Σ_{i>j} y_ij² + 2 max_{i>j} y_ij²)
// Callers assert lhs <= rhs. Throws ApplicabilityError for non-symmetric y.
std::pair<double, double> scalar_inequality_check(std::span<const double> lambdas, const Matrix& y);

// ((λ₁ - λₙ)², 2 max_{i≠j} (λ_i² + λ_j²)) with λ₁ the largest and λₙ the
// smallest value; lhs <= rhs always, which is why the symmetric-X bound is
// sharper than the Ky Fan one. Requires n >= 2.
std::pair<double, double> cdck_vs_kyfan_gap(std::span<const double> lambdas);

// For diagonal X, the commutator splits over the strict triangles of Y with
// disjoint supports, so total = upper + lower holds to rounding.
struct PythagoreanSplit {
  double total;
  double upper;
  double lower;
};
PythagoreanSplit pythagorean_split_check(const Matrix& x, const Matrix& y);

struct BoundEntry {
  std::string name;
  bool applicable = false;
  double value = 0.0;  // meaningful only when applicable
  double ratio = 0.0;  // lhs / value (1 when both vanish)
  bool equality = false;
};

struct BoundReport {
  int n = 0;
  double lhs = 0.0;  // ||[X, Y]||²
  std::vector<BoundEntry> entries;  // fixed order: bw, kyfan, cdck, infnorm
  std::string tightest;             // smallest applicable value; ties go to the earlier family
};

// Evaluates every applicable bound family. equality flags use |lhs - value|
// <= tol * max(|lhs|, |value|), default 1e-9 relative.
BoundReport evaluate_all(const Matrix& x, const Matrix& y, double equality_tol = 1e-9);

}  // namespace cnb
