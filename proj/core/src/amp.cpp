#include "ramp/amp.hpp"

#include <cmath>
#include <stdexcept>

#include "ramp/rng.hpp"

namespace ramp {

namespace {

/// Evaluates f_t coordinate-wise over the history columns hist[0..t].
Vector eval_denoiser(const Denoiser& f, const std::vector<Vector>& hist, int t) {
  const int n = static_cast<int>(hist[0].size());
  Vector out(n);
  std::vector<double> h(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= t; ++k) h[static_cast<std::size_t>(k)] = hist[static_cast<std::size_t>(k)](i);
    out(i) = f.eval(std::span<const double>(h.data(), h.size()));
  }
  return out;
}

AmpTrace amp_engine(const SymmetricMatrix& M, const DenoiserSchedule& schedule, int T,
                    const std::optional<ClipConfig>& clip_cfg, const OnsagerTable* fixed,
                    IterateScaling scaling) {
  if (T < 0) throw std::invalid_argument("run_amp: T must be >= 0");
  if (schedule.steps() < T) throw std::invalid_argument("run_amp: schedule has fewer than T denoisers");
  const int n = M.size();
  const double root_n = std::sqrt(static_cast<double>(n));

  AmpTrace tr;
  tr.clipped = clip_cfg.has_value();
  tr.clip_cfg = clip_cfg;
  tr.iterates.reserve(static_cast<std::size_t>(T) + 1);
  tr.iterates.push_back(Vector::Ones(n));
  tr.onsager.reserve(static_cast<std::size_t>(T));

  std::vector<Vector> f_cache;  // f_cache[t] = f_t(x^(t..0))
  f_cache.reserve(static_cast<std::size_t>(T));

  for (int t = 0; t < T; ++t) {
    f_cache.push_back(eval_denoiser(schedule.at(t), tr.iterates, t));
    Vector w = symv(M, f_cache.back());

    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(t));
    for (int j = 1; j <= t; ++j) {
      double B = fixed ? (*fixed)[static_cast<std::size_t>(t)][static_cast<std::size_t>(j - 1)]
                       : onsager_b(schedule, tr.iterates, t, j);
      row.push_back(B);
      if (B != 0.0) w -= B * f_cache[static_cast<std::size_t>(j - 1)];
    }
    tr.onsager.push_back(std::move(row));

    if (scaling == IterateScaling::Stabilized) {
      double denom = clip_cfg ? clip(w, *clip_cfg).norm() : w.norm();
      if (denom > 0.0) w *= root_n / denom;
    }
    if (clip_cfg) {
      tr.unclipped.push_back(w);
      clip_inplace(w, *clip_cfg);
    }
    tr.iterates.push_back(std::move(w));
  }
  return tr;
}

}  // namespace

double onsager_b(const DenoiserSchedule& schedule, const std::vector<Vector>& iterates, int t,
                 int j) {
  if (j < 1 || j > t) throw std::invalid_argument("onsager_b: need 1 <= j <= t");
  if (static_cast<int>(iterates.size()) < t + 1)
    throw std::invalid_argument("onsager_b: iterate history shorter than t+1");
  const Denoiser& f = schedule.at(t);
  const int n = static_cast<int>(iterates[0].size());
  std::vector<double> h(static_cast<std::size_t>(t) + 1);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= t; ++k) h[static_cast<std::size_t>(k)] = iterates[static_cast<std::size_t>(k)](i);
    acc += f.partial(std::span<const double>(h.data(), h.size()), j);
  }
  return acc / n;
}

OnsagerTable precompute_onsager_mc(const DenoiserSchedule& schedule, int T, int n,
                                   EntryDistribution dist, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("precompute_onsager_mc: samples must be >= 1");
  OnsagerTable table(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) table[static_cast<std::size_t>(t)].assign(static_cast<std::size_t>(t), 0.0);

  for (int s = 0; s < samples; ++s) {
    SymmetricMatrix X = gen_symmetric_iid(n, dist, derive_seed(seed, 0xb000 + static_cast<std::uint64_t>(s)));
    AmpTrace run = run_amp(X, schedule, T);  // empirical b inside the fresh run
    for (int t = 1; t < T; ++t)
      for (int j = 1; j <= t; ++j)
        table[static_cast<std::size_t>(t)][static_cast<std::size_t>(j - 1)] +=
            onsager_b(schedule, run.iterates, t, j);
  }
  for (auto& row : table)
    for (double& v : row) v /= samples;
  return table;
}

AmpTrace run_amp(const SymmetricMatrix& X, const DenoiserSchedule& schedule, int T,
                 const OnsagerEstimator& estimator, IterateScaling scaling) {
  if (estimator.mode == OnsagerMode::Empirical)
    return amp_engine(X, schedule, T, std::nullopt, nullptr, scaling);
  OnsagerTable table =
      precompute_onsager_mc(schedule, T, X.size(), estimator.dist, estimator.mc_samples, estimator.seed);
  return amp_engine(X, schedule, T, std::nullopt, &table, scaling);
}

AmpTrace run_clipped_amp(const SymmetricMatrix& Y_hat, const DenoiserSchedule& schedule, int T,
                         const ClipConfig& clip_cfg, const OnsagerEstimator& estimator,
                         IterateScaling scaling) {
  if (estimator.mode == OnsagerMode::Empirical)
    return amp_engine(Y_hat, schedule, T, clip_cfg, nullptr, scaling);
  OnsagerTable table = precompute_onsager_mc(schedule, T, Y_hat.size(), estimator.dist,
                                             estimator.mc_samples, estimator.seed);
  return amp_engine(Y_hat, schedule, T, clip_cfg, &table, scaling);
}

AmpTrace run_amp_fixed(const SymmetricMatrix& M, const DenoiserSchedule& schedule, int T,
                       const OnsagerTable& table, const std::optional<ClipConfig>& clip_cfg,
                       IterateScaling scaling) {
  if (static_cast<int>(table.size()) < T)
    throw std::invalid_argument("run_amp_fixed: table has fewer than T rows");
  return amp_engine(M, schedule, T, clip_cfg, &table, scaling);
}

RobustResult robust_amp(const SymmetricMatrix& Y, const DenoiserSchedule& schedule, int T,
                        double eps, double K, std::uint64_t seed, const RobustOptions& opts) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("robust_amp: eps must be in [0,1)");
  if (!(K > 0)) throw std::invalid_argument("robust_amp: K must be > 0");
  CleaningResult cleaning = spectral_clean(Y, K, opts.tol, seed);
  ClipConfig cfg = ClipConfig::make(eps, opts.c_t);
  AmpTrace trace = run_clipped_amp(cleaning.cleaned, schedule, T, cfg, opts.estimator, opts.scaling);
  Vector v_hat = trace.final_iterate();
  return RobustResult{std::move(v_hat), std::move(cleaning), std::move(trace)};
}

Vector round_nonneg(const Vector& v) {
  Vector w = v.cwiseMax(0.0);
  double nw = w.norm();
  if (nw == 0.0) throw std::invalid_argument("round_nonneg: vector has no positive part");
  return w / nw;
}

Vector round_hypercube(const Vector& v) {
  const int n = static_cast<int>(v.size());
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = v(i) < 0.0 ? -s : s;
  return w;
}

}  // namespace ramp
