#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnb/matrix.hpp"

namespace cnb {

// The quadratic commutator operator Y -> [Xᵀ, [X, Y]]. It is symmetric and
// positive semidefinite on matrix space under the trace inner product:
// <Y, T_X Y> = ||[X, Y]||^2.
Matrix t_apply(const Matrix& x, const Matrix& y);

// Reusable, allocation-free application of T_X for hot loops (power iteration,
// materialization columns). Not thread-safe: each thread needs its own copy.
class TOperator {
 public:
  explicit TOperator(const Matrix& x);

  int matrix_dim() const noexcept { return n_; }
  int dim() const noexcept { return n_ * n_; }  // dimension of the vectorized space

  // out = vec([Xᵀ, [X, unvec(y)]]); in and out must not alias.
  void apply(std::span<const double> y, std::span<double> out) const;

 private:
  int n_;
  std::vector<double> x_, xt_;
  mutable std::vector<double> s1_, s2_;
};

// Dense n² x n² matrix M with M vec(Y) = vec(T_X(Y)); symmetric PSD.
Matrix t_materialize(const Matrix& x);

// The restriction of T to block pairs: with D = ΛB - CΛ, the pair (B, C) maps
// to (ΛD, -DΛ). lambda is the diagonal of Λ.
BlockPair tilde_apply(std::span<const double> lambda, const BlockPair& a);

// ||ΛB - CΛ||²; equals <a, tilde_apply(lambda, a)>.
double block_commutator_norm_sq(std::span<const double> lambda, const BlockPair& a);

// Dense 2n² x 2n² materialization of tilde_apply. Pair vectorization: vec(C)
// occupies the first n² slots and vec(B) the last n², mirroring diag(C, B).
Matrix tilde_materialize(std::span<const double> lambda);

std::vector<double> pair_to_vec(const BlockPair& a);
BlockPair vec_to_pair(std::span<const double> v, int n);

// ---- closed-form spectrum of the block operator ----

enum class EigenKind {
  kDiagonalPair,  // eigenvalue 2 s_i², eigenvector (E_ii, -E_ii)
  kMixedPair,     // eigenvalue s_i² + s_j², i != j
  kKernel,        // eigenvalue 0, eigenvector (E_ij, (s_i/s_j) E_ij)
};

std::string to_string(EigenKind kind);

struct PredictedEigenpair {
  double value;
  EigenKind kind;
  int i, j;          // 1-based entry indices of the supporting E_ij
  BlockPair vector;  // unit Frobenius norm
};

struct GenericityReport {
  bool is_generic = false;
  std::vector<std::string> violations;
  double suggested_perturbation = 0.0;
};

class GenericityError : public std::invalid_argument {
 public:
  GenericityError(const std::string& message, GenericityReport report)
      : std::invalid_argument(message), report_(std::move(report)) {}

  const GenericityReport& report() const noexcept { return report_; }

 private:
  GenericityReport report_;
};

// The spectrum of the block operator is closed-form when the coefficients are
// generic: all s_i nonzero, all s_i² distinct, and all pairwise sums
// s_i² + s_j² (i <= j) distinct. Tested at tolerance 1e-9 relative to s₁².
GenericityReport check_genericity(std::span<const double> lambda);

// Deterministic seeded jitter of magnitude at most 1e-6 * max(1, s₁) until the
// genericity check passes; a descending input stays descending. Already
// generic input is returned unchanged. Throws ConvergenceError after 100
// attempts.
std::vector<double> perturb_to_generic(std::span<const double> lambda, std::uint64_t seed);

// All 2n² eigenpairs, sorted by descending eigenvalue: n diagonal pairs at
// 2 s_i², n(n-1) mixed pairs at s_i² + s_j², and an n²-dimensional kernel.
// The mixed pair supported on entry (i, j) carries the coefficient
// c = -s_j / s_i, the unique solution of the entrywise eigenvector equations
//   -s_i s_j b_ij = (λ - s_j²) c_ij,   -s_i s_j c_ij = (λ - s_i²) b_ij
// at λ = s_i² + s_j². Throws GenericityError on non-generic input.
std::vector<PredictedEigenpair> closed_form_spectrum(std::span<const double> lambda);

// ---- prediction-vs-numeric report ----

struct MultiplicityCluster {
  double value;
  int count;
};

// Cross-check of the two candidate coefficient conventions for the mixed
// eigenvector supported on entry (2,1): the solution of the eigenvector
// equations, -s₁/s₂, against the index-mirrored guess -s₂/s₁ (which does not
// satisfy them and is kept as a regression check on the equations).
struct SecondPairCertification {
  double eigenvalue;            // s₁² + s₂²
  double derived_coefficient;   // -s₁/s₂
  double derived_residual;
  double mirrored_coefficient;  // -s₂/s₁
  double mirrored_residual;
};

struct SpectrumReport {
  int n = 0;
  std::vector<double> sigma_input;
  std::vector<double> sigma_used;  // after perturbation, if any
  bool perturbed = false;
  std::vector<PredictedEigenpair> predicted;
  std::vector<double> computed;  // numeric spectrum of the materialized operator, descending
  double eigenvalue_multiset_distance = 0.0;
  double max_eigenvector_residual = 0.0;
  std::vector<MultiplicityCluster> multiplicity;  // clusters of the computed spectrum
  std::optional<SecondPairCertification> certification;
};

struct SpectrumOptions {
  bool allow_perturbation = false;
  std::uint64_t seed = 1;
};

// Closed-form prediction against the dense Jacobi eigensolve of the
// materialized block operator. Non-generic input either throws
// GenericityError or, when opts.allow_perturbation is set, is nudged by
// perturb_to_generic first. Multiplicity clusters use gap 1e-9 * s₁².
SpectrumReport spectrum_report(std::span<const double> lambda, const SpectrumOptions& opts = {});

}  // namespace cnb
