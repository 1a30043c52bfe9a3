#include "ramp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ramp/eig.hpp"
#include "ramp/rng.hpp"

#include <nlohmann/json.hpp>

namespace ramp {

ScalarFn ScalarFn::identity() {
  return ScalarFn{[](double x) { return x; }, 1, "identity"};
}

namespace {

/// Square root factor of the centered block cov[1..t, 1..t] for sampling;
/// clamps negative eigenvalues at 0 and reports whether clamping mattered.
Eigen::MatrixXd sampling_factor(const Eigen::MatrixXd& cov, int t, bool& repaired) {
  Eigen::MatrixXd block = cov.block(1, 1, t, t);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
  Eigen::VectorXd ev = es.eigenvalues();
  double top = std::max(ev.maxCoeff(), 0.0);
  for (int i = 0; i < t; ++i) {
    if (ev(i) < 0.0) {
      if (ev(i) < -1e-10 * std::max(top, 1.0)) repaired = true;
      ev(i) = 0.0;
    }
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
}

}  // namespace

SEModel se_covariance(const DenoiserSchedule& schedule, int T, int mc_samples,
                      std::uint64_t seed) {
  if (T < 0) throw std::invalid_argument("se_covariance: T must be >= 0");
  if (mc_samples < 1) throw std::invalid_argument("se_covariance: mc_samples must be >= 1");
  if (schedule.steps() < T) throw std::invalid_argument("se_covariance: schedule too short");

  SEModel model;
  model.T = T;
  model.mc_samples = mc_samples;
  model.seed = seed;
  model.cov = Eigen::MatrixXd::Zero(T + 1, T + 1);
  model.stderr_cov = Eigen::MatrixXd::Zero(T + 1, T + 1);

  std::vector<double> h(static_cast<std::size_t>(T) + 1);
  h[0] = model.mean0;

  for (int t = 0; t < T; ++t) {
    if (t == 0) {
      // U^0 deterministic: cov(U^1, U^1) = f_0(1)^2 exactly
      double f0 = schedule.at(0).eval(std::span<const double>(h.data(), 1));
      model.cov(1, 1) = f0 * f0;
      continue;
    }
    Eigen::MatrixXd L = sampling_factor(model.cov, t, model.psd_repaired);
    Rng rng(derive_seed(seed, 0x5e00 + static_cast<std::uint64_t>(t)));

    Eigen::VectorXd sum = Eigen::VectorXd::Zero(t + 1);
    Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(t + 1);
    Eigen::VectorXd z(t), u(t);
    std::vector<double> fs(static_cast<std::size_t>(t) + 1);
    for (int s = 0; s < mc_samples; ++s) {
      for (int i = 0; i < t; ++i) z(i) = rng.gaussian();
      u = L * z;
      for (int k = 1; k <= t; ++k) h[static_cast<std::size_t>(k)] = u(k - 1);
      for (int r = 0; r <= t; ++r)
        fs[static_cast<std::size_t>(r)] =
            schedule.at(r).eval(std::span<const double>(h.data(), static_cast<std::size_t>(r) + 1));
      for (int r = 0; r <= t; ++r) {
        double prod = fs[static_cast<std::size_t>(r)] * fs[static_cast<std::size_t>(t)];
        sum(r) += prod;
        sumsq(r) += prod * prod;
      }
    }
    for (int r = 0; r <= t; ++r) {
      double mean = sum(r) / mc_samples;
      double var = std::max(0.0, sumsq(r) / mc_samples - mean * mean);
      model.cov(r + 1, t + 1) = mean;
      model.cov(t + 1, r + 1) = mean;
      double se = std::sqrt(var / mc_samples);
      model.stderr_cov(r + 1, t + 1) = se;
      model.stderr_cov(t + 1, r + 1) = se;
    }
  }
  return model;
}

double se_check(const AmpTrace& trace, const SEModel& model, const HistoryFn& phi, int mc_samples,
                std::uint64_t seed) {
  if (trace.clipped) throw std::invalid_argument("se_check: trace must be unclipped");
  const int T = trace.T();
  if (T > model.T) throw std::invalid_argument("se_check: model shorter than trace");
  const int n = static_cast<int>(trace.iterates[0].size());

  // empirical coordinate average over the run
  std::vector<double> h(static_cast<std::size_t>(T) + 1);
  double emp = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= T; ++k) h[static_cast<std::size_t>(k)] = trace.iterates[static_cast<std::size_t>(k)](i);
    emp += phi.eval(std::span<const double>(h.data(), h.size()));
  }
  emp /= n;

  // model expectation by Monte Carlo
  if (mc_samples <= 0) mc_samples = model.mc_samples;
  bool repaired = false;
  Eigen::MatrixXd L = T >= 1 ? sampling_factor(model.cov, T, repaired) : Eigen::MatrixXd();
  Rng rng(derive_seed(seed, 0x5ec4ecULL));
  h[0] = model.mean0;
  Eigen::VectorXd z(std::max(T, 1)), u(std::max(T, 1));
  double exp_model = 0.0;
  for (int s = 0; s < mc_samples; ++s) {
    if (T >= 1) {
      for (int i = 0; i < T; ++i) z(i) = rng.gaussian();
      u.head(T) = L * z.head(T);
      for (int k = 1; k <= T; ++k) h[static_cast<std::size_t>(k)] = u(k - 1);
    }
    exp_model += phi.eval(std::span<const double>(h.data(), h.size()));
  }
  exp_model /= mc_samples;
  return std::abs(emp - exp_model);
}

double quantile_mass(const Vector& v, const ScalarFn& f, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("quantile_mass: eps must be in (0,1]");
  const int n = static_cast<int>(v.size());
  std::vector<double> sq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double fi = f.eval(v(i));
    sq[static_cast<std::size_t>(i)] = fi * fi;
  }
  int k = std::min<int>(n, static_cast<int>(std::ceil(eps * n)));
  std::partial_sort(sq.begin(), sq.begin() + k, sq.end(), std::greater<double>());
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += sq[static_cast<std::size_t>(i)];
  return acc / n;
}

double tail_mass(const Vector& v, const ScalarFn& f, const ScalarFn& g, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("tail_mass: theta must be > 0");
  const int n = static_cast<int>(v.size());
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double gi = g.eval(v(i));
    if (gi * gi > theta) {
      double fi = f.eval(v(i));
      acc += fi * fi;
    }
  }
  return acc / n;
}

SymmetricMatrix naive_clean(const SymmetricMatrix& Y, double lambda_max) {
  if (!(lambda_max > 0)) throw std::invalid_argument("naive_clean: lambda_max must be > 0");
  EigDecomposition eig = dense_sym_eig(Y, true);
  const int n = Y.size();
  Eigen::VectorXd kept = eig.values;
  for (int i = 0; i < n; ++i)
    if (std::abs(kept(i)) > lambda_max) kept(i) = 0.0;
  Eigen::MatrixXd rec = eig.vectors * kept.asDiagonal() * eig.vectors.transpose();
  rec = (rec + rec.transpose()) / 2.0;  // restore bit-exact symmetry
  return SymmetricMatrix::from_dense(rec);
}

double naive_lambda_max(double alpha_hat, double delta) { return alpha_hat * (1.0 + delta); }

MetricsReport metrics(const Vector& v_hat, const AmpTrace& trace_clean, const SymmetricMatrix& X) {
  const Vector& v_amp = trace_clean.final_iterate();
  double nh = v_hat.norm();
  double na = v_amp.norm();
  if (nh == 0.0 || na == 0.0) throw std::invalid_argument("metrics: zero vector");
  MetricsReport r;
  r.correlation = v_hat.dot(v_amp) / (nh * na);
  r.objective_clean = v_hat.dot(symv(X, v_hat)) / (nh * nh);
  r.error_ratio = (v_hat - v_amp).squaredNorm() / v_amp.squaredNorm();
  return r;
}

std::string to_json(const SEModel& m) {
  nlohmann::json j;
  j["T"] = m.T;
  j["mc_samples"] = m.mc_samples;
  j["seed"] = m.seed;
  j["mean0"] = m.mean0;
  j["psd_repaired"] = m.psd_repaired;
  auto mat = [](const Eigen::MatrixXd& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["cov"] = mat(m.cov);
  j["stderr"] = mat(m.stderr_cov);
  return j.dump(2);
}

SEModel se_model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SEModel m;
  m.T = j.at("T").get<int>();
  m.mc_samples = j.at("mc_samples").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.mean0 = j.at("mean0").get<double>();
  m.psd_repaired = j.at("psd_repaired").get<bool>();
  auto mat = [](const nlohmann::json& rows) {
    Eigen::MatrixXd a(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        a(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    return a;
  };
  m.cov = mat(j.at("cov"));
  m.stderr_cov = mat(j.at("stderr"));
  return m;
}

std::string to_json(const MetricsReport& r) {
  nlohmann::json j;
  j["correlation"] = r.correlation;
  j["objective_clean"] = r.objective_clean;
  j["error_ratio"] = r.error_ratio;
  return j.dump(2);
}

}  // namespace ramp
