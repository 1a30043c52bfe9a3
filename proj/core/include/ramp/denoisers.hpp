#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ramp/matrix.hpp"

namespace ramp {

/// Coordinate-wise denoiser f_t. `history` is one coordinate's iterate
/// history ordered oldest first: history[k] = x^(k)_i, k = 0..t. Built-ins
/// read only the newest entry but accept any history length, so one Denoiser
/// can serve every step of a schedule.
struct Denoiser {
  std::function<double(std::span<const double>)> eval;
  /// Partial derivative of eval with respect to history[j].
  std::function<double(std::span<const double>, int)> partial;
  int pl_order = 1;
  double lipschitz = 1.0;  // finite iff pl_order <= 1
  std::string name;
};

/// f(history) = max(last, 0); derivative at 0 is defined as 0.
Denoiser relu_denoiser();

/// f(history) = last. Reduces AMP to x^(t+1) = X x^(t) - x^(t-1).
Denoiser identity_denoiser();

/// f(history) = sum_k coeffs[k] * history[slot]^k. slot = -1 targets the
/// newest entry. pl_order is the polynomial degree; lipschitz is +inf for
/// degree > 1.
Denoiser poly_denoiser(std::vector<double> coeffs, int target_slot = -1);

/// Denoiser sequence f_0..f_{T-1}.
struct DenoiserSchedule {
  std::vector<Denoiser> denoisers;

  static DenoiserSchedule uniform(Denoiser d, int T);

  int steps() const { return static_cast<int>(denoisers.size()); }
  const Denoiser& at(int t) const { return denoisers.at(static_cast<std::size_t>(t)); }
  int max_pl_order() const;
};

/// Degree bound of the T-step iterate as a polynomial in the matrix entries:
/// deg x^(t+1) = 1 + d_t * max_{j<=t} deg x^(j), deg x^(0) = 0. For degree-k
/// denoisers this is <= k^T.
long long iterate_degree(const DenoiserSchedule& schedule, int T);

/// Saturation config: cutoff = sqrt(c_t * log(1/eps)).
struct ClipConfig {
  double eps = 0.0;
  double c_t = 16.0;
  double cutoff = std::numeric_limits<double>::infinity();

  static ClipConfig make(double eps, double c_t = 16.0);
  static ClipConfig unbounded();
};

double clip_scalar(double y, const ClipConfig& cfg);
Vector clip(const Vector& v, const ClipConfig& cfg);
void clip_inplace(Vector& v, const ClipConfig& cfg);

}  // namespace ramp
