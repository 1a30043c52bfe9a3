#include "ramp/rng.hpp"

#include <cmath>

namespace ramp {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 applied to master advanced by the stream index
  std::uint64_t z = master + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53 random bits -> [0,1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // u1 in (0,1] so log is finite
  double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

int Rng::sign() { return (gen_() >> 63) ? 1 : -1; }

std::uint64_t Rng::below(std::uint64_t n) {
  // modulo with rejection to avoid bias
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = gen_();
  while (v >= limit) v = gen_();
  return v % n;
}

}  // namespace ramp
