#pragma once

#include <cstdint>
#include <random>

namespace ramp {

/// Mixes a master seed with a stream tag into an independent child seed
/// (splitmix64 finalizer). Used everywhere a run needs several named
/// deterministic streams derived from one user-facing seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Deterministic random stream: mt19937_64 core with a Box-Muller Gaussian
/// on top, so the same seed produces the same doubles on every platform
/// (std::normal_distribution is implementation-defined; we avoid it).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller; generates pairs, caches the second.
  double gaussian();

  /// Uniform sign in {-1, +1}.
  int sign();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Independent stream derived from this generator's seed and a tag.
  Rng child(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace ramp
