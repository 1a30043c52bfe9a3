#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "ramp/amp.hpp"
#include "ramp/denoisers.hpp"
#include "ramp/matrix.hpp"

namespace ramp {

/// Gaussian-process model of the iterate coordinates U^0..U^T. U^0 is the
/// deterministic constant 1 (row/column 0 of cov is zero, mean carried in
/// mean0); levels 1..T are centered with covariance cov.
struct SEModel {
  int T = 0;
  Eigen::MatrixXd cov;          // (T+1) x (T+1)
  Eigen::MatrixXd stderr_cov;   // Monte-Carlo standard error per entry
  int mc_samples = 0;
  std::uint64_t seed = 0;
  double mean0 = 1.0;
  bool psd_repaired = false;  // eigenvalue clamping was needed when sampling
};

/// Pseudo-Lipschitz statistic of a full history (U^0..U^T), oldest first.
struct HistoryFn {
  std::function<double(std::span<const double>)> eval;
  int pl_order = 2;
  std::string name;
};

/// Scalar pseudo-Lipschitz function for the mass diagnostics.
struct ScalarFn {
  std::function<double(double)> eval;
  int pl_order = 1;
  std::string name;

  static ScalarFn identity();
};

/// Builds the covariance level by level: cov(U^{s+1}, U^{t+1}) =
/// E[f_s(U^s..U^0) f_t(U^t..U^0)], estimated with mc_samples joint draws
/// from the model built so far. Non-PSD estimates are repaired by clamping
/// negative eigenvalues at 0 (flagged in the model).
SEModel se_covariance(const DenoiserSchedule& schedule, int T, int mc_samples, std::uint64_t seed);

/// |empirical coordinate average of phi over the trace - model expectation
/// of phi|. The model expectation is Monte Carlo with mc_samples draws
/// (0 = reuse the model's sample count). The trace must be unclipped and
/// come from a clean matrix.
double se_check(const AmpTrace& trace, const SEModel& model, const HistoryFn& phi,
                int mc_samples = 0, std::uint64_t seed = 0x5ec0de);

/// max over |I| <= ceil(eps n) of (1/n) sum_{i in I} f(v_i)^2; the maximum is
/// attained by the top quantile, so this sorts f(v)^2 descending and sums the
/// top ceil(eps n) values.
double quantile_mass(const Vector& v, const ScalarFn& f, double eps);

/// (1/n) sum_i f(v_i)^2 1[g(v_i)^2 > theta].
double tail_mass(const Vector& v, const ScalarFn& f, const ScalarFn& g, double theta);

/// Full eigendecomposition of Y with every eigenvalue of magnitude
/// > lambda_max dropped from the reconstruction.
SymmetricMatrix naive_clean(const SymmetricMatrix& Y, double lambda_max);

/// Default "larger than expected" level for naive_clean: alpha_hat * (1 + delta).
double naive_lambda_max(double alpha_hat, double delta = 0.05);

struct MetricsReport {
  double correlation = 0.0;      // <v_hat, v_AMP> / (||v_hat|| ||v_AMP||)
  double objective_clean = 0.0;  // v_hat' X v_hat / ||v_hat||^2
  double error_ratio = 0.0;      // ||v_hat - v_AMP||^2 / ||v_AMP||^2
};

/// v_AMP(X) is the final iterate of the clean trace. Throws on zero vectors.
MetricsReport metrics(const Vector& v_hat, const AmpTrace& trace_clean, const SymmetricMatrix& X);

std::string to_json(const SEModel& m);
std::string to_json(const MetricsReport& r);
SEModel se_model_from_json(const std::string& text);

}  // namespace ramp
