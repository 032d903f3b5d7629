#pragma once

#include <cstdint>
#include <random>

namespace cnb {

// Reproducible random source used everywhere randomness is needed.
//
// The generator algorithm is fixed and documented so that streams are stable
// across runs and platforms:
//   * engine: std::mt19937_64 (bit-exact sequence mandated by the standard),
//     seeded with a SplitMix64 hash of the root seed;
//   * substreams: substream(k) reseeds from mix(root, k), a SplitMix64-style
//     hash of (root, k), so per-trial streams are independent of how many
//     draws earlier trials consumed — parallel and serial traversals of an
//     ensemble see identical data;
//   * uniforms: 53-bit mantissa draws, uniform() in [0,1);
//   * gaussians: Box-Muller on two uniforms, the second variate of each pair
//     is cached and handed out next.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child stream derived from the root seed and the index, not from engine state.
  Rng substream(std::uint64_t index) const;

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1]
  double gaussian();      // standard normal

 private:
  std::uint64_t root_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cnb
