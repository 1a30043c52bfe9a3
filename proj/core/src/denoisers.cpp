#include "ramp/denoisers.hpp"

#include <stdexcept>

namespace ramp {

Denoiser relu_denoiser() {
  Denoiser d;
  d.eval = [](std::span<const double> h) { return std::max(h.back(), 0.0); };
  d.partial = [](std::span<const double> h, int j) {
    if (j != static_cast<int>(h.size()) - 1) return 0.0;
    return h.back() > 0.0 ? 1.0 : 0.0;
  };
  d.pl_order = 1;
  d.lipschitz = 1.0;
  d.name = "relu";
  return d;
}

Denoiser identity_denoiser() {
  Denoiser d;
  d.eval = [](std::span<const double> h) { return h.back(); };
  d.partial = [](std::span<const double> h, int j) {
    return j == static_cast<int>(h.size()) - 1 ? 1.0 : 0.0;
  };
  d.pl_order = 1;
  d.lipschitz = 1.0;
  d.name = "identity";
  return d;
}

Denoiser poly_denoiser(std::vector<double> coeffs, int target_slot) {
  if (coeffs.empty()) throw std::invalid_argument("poly_denoiser: coeffs must be nonempty");
  int degree = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) degree = static_cast<int>(k);

  auto slot_of = [target_slot](std::span<const double> h) {
    int s = target_slot < 0 ? static_cast<int>(h.size()) - 1 : target_slot;
    if (s < 0 || s >= static_cast<int>(h.size()))
      throw std::out_of_range("poly_denoiser: target slot outside history");
    return s;
  };

  Denoiser d;
  d.eval = [coeffs, slot_of](std::span<const double> h) {
    double x = h[static_cast<std::size_t>(slot_of(h))];
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];  // Horner
    return acc;
  };
  d.partial = [coeffs, slot_of](std::span<const double> h, int j) {
    if (j != slot_of(h)) return 0.0;
    double x = h[static_cast<std::size_t>(j)];
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
      acc = acc * x + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  d.pl_order = degree;
  if (degree == 0)
    d.lipschitz = 0.0;
  else if (degree == 1)
    d.lipschitz = std::abs(coeffs[1]);
  else
    d.lipschitz = std::numeric_limits<double>::infinity();
  d.name = "poly";
  return d;
}

DenoiserSchedule DenoiserSchedule::uniform(Denoiser d, int T) {
  if (T < 0) throw std::invalid_argument("DenoiserSchedule: T must be >= 0");
  DenoiserSchedule s;
  s.denoisers.assign(static_cast<std::size_t>(T), d);
  return s;
}

int DenoiserSchedule::max_pl_order() const {
  int m = 0;
  for (const auto& d : denoisers) m = std::max(m, d.pl_order);
  return m;
}

long long iterate_degree(const DenoiserSchedule& schedule, int T) {
  if (T > schedule.steps()) throw std::invalid_argument("iterate_degree: schedule too short");
  long long maxdeg = 0;  // deg x^(0) = 0
  for (int t = 0; t < T; ++t)
    maxdeg = 1 + static_cast<long long>(schedule.at(t).pl_order) * maxdeg;
  return maxdeg;
}

ClipConfig ClipConfig::make(double eps, double c_t) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("ClipConfig: eps must be in [0,1)");
  if (!(c_t > 0.0)) throw std::invalid_argument("ClipConfig: c_t must be > 0");
  ClipConfig cfg;
  cfg.eps = eps;
  cfg.c_t = c_t;
  cfg.cutoff = eps == 0.0 ? std::numeric_limits<double>::infinity()
                          : std::sqrt(c_t * std::log(1.0 / eps));
  return cfg;
}

ClipConfig ClipConfig::unbounded() { return ClipConfig{}; }

double clip_scalar(double y, const ClipConfig& cfg) {
  if (y > cfg.cutoff) return cfg.cutoff;
  if (y < -cfg.cutoff) return -cfg.cutoff;
  return y;
}

Vector clip(const Vector& v, const ClipConfig& cfg) {
  if (!std::isfinite(cfg.cutoff)) return v;
  return v.cwiseMin(cfg.cutoff).cwiseMax(-cfg.cutoff);
}

void clip_inplace(Vector& v, const ClipConfig& cfg) {
  if (!std::isfinite(cfg.cutoff)) return;
  v = v.cwiseMin(cfg.cutoff).cwiseMax(-cfg.cutoff);
}

}  // namespace ramp
