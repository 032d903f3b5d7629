#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cnb/matrix.hpp"
#include "cnb/rng.hpp"

namespace cnb {

// Random matrix families used by campaigns. Each kind enforces its structural
// constraint exactly (bitwise), not just to tolerance:
//   gaussian: i.i.d. standard normal entries
//   symmetric: (G + Gᵀ)/2 of a gaussian draw
//   diagonal: gaussian diagonal, exact zeros elsewhere
//   orthogonal-conjugated-diagonal: Q diag(d) Qᵀ, Q from QR of a gaussian draw
//   nilpotent-upper: strictly upper triangular gaussian
enum class EnsembleKind {
  kGaussian,
  kSymmetric,
  kDiagonal,
  kOrthogonalConjugatedDiagonal,
  kNilpotentUpper,
};

EnsembleKind parse_ensemble_kind(std::string_view name);  // throws std::invalid_argument
std::string to_string(EnsembleKind kind);

struct EnsembleSpec {
  int n = 0;
  EnsembleKind kind = EnsembleKind::kGaussian;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

// Matrix number `index` of the stream. Per-trial substreams are derived from
// (seed, index), so any trial can be regenerated directly — this is what makes
// violation records replayable and trials parallelizable.
Matrix draw(const EnsembleSpec& spec, std::uint64_t index);

// Haar-ish orthogonal factor: modified Gram-Schmidt QR of a gaussian matrix.
Matrix random_orthogonal(int n, Rng& rng);

// Sequential view of the same stream.
class EnsembleStream {
 public:
  explicit EnsembleStream(EnsembleSpec spec) : spec_(spec) {}

  Matrix next() { return draw(spec_, position_++); }
  std::uint64_t position() const noexcept { return position_; }
  const EnsembleSpec& spec() const noexcept { return spec_; }

 private:
  EnsembleSpec spec_;
  std::uint64_t position_ = 0;
};

}  // namespace cnb
