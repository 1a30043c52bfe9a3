#include "ramp/experiment.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ramp/rng.hpp"
#include "ramp/spectra.hpp"
#include "ramp/verify.hpp"

#include <nlohmann/json.hpp>

namespace ramp {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

/// Output vector an arm reports at iteration t, per the rounding policy.
/// nonneg falls back to plain normalization when the positive part vanishes.
Vector report_vector(const Vector& x, const std::string& rounding) {
  if (rounding == "hypercube") return round_hypercube(x);
  if (rounding == "nonneg") {
    Vector w = x.cwiseMax(0.0);
    double nw = w.norm();
    if (nw > 0.0) return w / nw;
  }
  double nx = x.norm();
  if (nx == 0.0) return x;
  return x / nx;
}

}  // namespace

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> errs;
  if (n < 1) errs.push_back("n must be >= 1");
  if (eps < 0.0 || eps >= 1.0) errs.push_back("eps must be in [0,1)");
  if (T < 0) errs.push_back("T must be >= 0");
  if (dist != "gaussian" && dist != "rademacher") errs.push_back("dist must be gaussian|rademacher");
  if (schedule.type != "relu" && schedule.type != "identity" && schedule.type != "poly")
    errs.push_back("schedule.type must be relu|identity|poly");
  if (schedule.type == "poly" && schedule.coeffs.empty()) errs.push_back("poly schedule needs coeffs");
  if (adversary.kind != "wishart" && adversary.kind != "file" && adversary.kind != "none")
    errs.push_back("adversary.kind must be wishart|file|none");
  if (adversary.kind == "wishart" && eps > 0.0) {
    int m = static_cast<int>(std::ceil(eps * n));
    if (adversary.rank < 1 || adversary.rank > m)
      errs.push_back("adversary.rank must be in [1, ceil(eps*n)]");
    if (!(adversary.target_frobenius > 0.0)) errs.push_back("adversary.target_frobenius must be > 0");
  }
  if (adversary.kind == "file" && adversary.path.empty()) errs.push_back("adversary.path is required");
  if (!(c_t > 0.0)) errs.push_back("c_t must be > 0");
  if (K.mode != "auto" && K.mode != "expected" && K.mode != "explicit")
    errs.push_back("K.mode must be auto|expected|explicit");
  if (K.mode == "explicit" && !(K.value > 0.0)) errs.push_back("explicit K must be > 0");
  if (K.mode != "explicit" && K.alpha_samples < 1) errs.push_back("K.alpha_samples must be >= 1");
  if (K.mode == "expected" && !(K.delta >= 0.0)) errs.push_back("K.delta must be >= 0");
  if (rounding != "nonneg" && rounding != "hypercube" && rounding != "none")
    errs.push_back("rounding must be nonneg|hypercube|none");
  if (scaling != "stabilized" && scaling != "raw") errs.push_back("scaling must be stabilized|raw");
  if (!(tol > 0.0)) errs.push_back("tol must be > 0");
  if (replications < 1) errs.push_back("replications must be >= 1");
  return errs;
}

EntryDistribution ExperimentConfig::entry_distribution() const {
  return dist == "rademacher" ? EntryDistribution::rademacher() : EntryDistribution::gaussian();
}

IterateScaling ExperimentConfig::iterate_scaling() const {
  return scaling == "raw" ? IterateScaling::Raw : IterateScaling::Stabilized;
}

std::string to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["schema"] = "robust-amp/1";
  j["n"] = c.n;
  j["eps"] = c.eps;
  j["T"] = c.T;
  j["dist"] = c.dist;
  j["schedule"] = nlohmann::json::parse(to_json(c.schedule));
  j["adversary"] = {{"kind", c.adversary.kind},
                    {"rank", c.adversary.rank},
                    {"target_frobenius", c.adversary.target_frobenius},
                    {"path", c.adversary.path}};
  j["c_t"] = c.c_t;
  j["K"] = {{"mode", c.K.mode},
            {"value", c.K.value},
            {"delta", c.K.delta},
            {"alpha_samples", c.K.alpha_samples}};
  j["rounding"] = c.rounding;
  j["scaling"] = c.scaling;
  j["tol"] = c.tol;
  j["seeds"] = {{"master", c.master_seed}, {"replications", c.replications}};
  j["out_dir"] = c.out_dir;
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.contains("kind") && j["kind"] == "experiment-manifest") j = j.at("config");
  ExperimentConfig c;
  c.n = j.at("n").get<int>();
  c.eps = j.at("eps").get<double>();
  c.T = j.at("T").get<int>();
  if (j.contains("dist")) c.dist = j["dist"].get<std::string>();
  if (j.contains("schedule")) {
    c.schedule = schedule_spec_from_json(j["schedule"].dump());
  }
  if (j.contains("adversary")) {
    const auto& a = j["adversary"];
    if (a.contains("kind")) c.adversary.kind = a["kind"].get<std::string>();
    if (a.contains("rank")) c.adversary.rank = a["rank"].get<int>();
    if (a.contains("target_frobenius"))
      c.adversary.target_frobenius = a["target_frobenius"].get<double>();
    if (a.contains("path")) c.adversary.path = a["path"].get<std::string>();
  }
  if (j.contains("c_t")) c.c_t = j["c_t"].get<double>();
  if (j.contains("K")) {
    const auto& k = j["K"];
    if (k.contains("mode")) c.K.mode = k["mode"].get<std::string>();
    if (k.contains("value")) c.K.value = k["value"].get<double>();
    if (k.contains("delta")) c.K.delta = k["delta"].get<double>();
    if (k.contains("alpha_samples")) c.K.alpha_samples = k["alpha_samples"].get<int>();
  }
  if (j.contains("rounding")) c.rounding = j["rounding"].get<std::string>();
  if (j.contains("scaling")) c.scaling = j["scaling"].get<std::string>();
  if (j.contains("tol")) c.tol = j["tol"].get<double>();
  if (j.contains("seeds")) {
    c.master_seed = j["seeds"].at("master").get<std::uint64_t>();
    c.replications = j["seeds"].at("replications").get<int>();
  }
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  return c;
}

std::uint64_t experiment_seed(std::uint64_t master, int replication, int role) {
  return derive_seed(master, static_cast<std::uint64_t>(replication) * 16 + static_cast<std::uint64_t>(role));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  auto errs = config.validate();
  if (!errs.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& e : errs) msg += " " + e + ";";
    throw std::invalid_argument(msg);
  }

  const int n = config.n;
  const int T = config.T;
  const EntryDistribution dist = config.entry_distribution();
  const DenoiserSchedule schedule = config.schedule.build(T);
  const IterateScaling scaling = config.iterate_scaling();

  ExperimentResult result;

  // alpha_hat once per invocation; seed derived from the master so a
  // manifest re-run reproduces it
  const std::uint64_t alpha_seed = derive_seed(config.master_seed, 0xa1faULL);
  double alpha_hat = 0.0;
  if (config.K.mode != "explicit") {
    alpha_hat = expected_opnorm(n, dist, config.K.alpha_samples, alpha_seed);
  } else {
    alpha_hat = expected_opnorm(n, dist, std::min(config.K.alpha_samples, 3), alpha_seed);
  }
  double K = 0.0;
  if (config.K.mode == "auto") K = 5.0 * alpha_hat;
  else if (config.K.mode == "expected") K = alpha_hat * (1.0 + config.K.delta);
  else K = config.K.value;
  result.alpha_hat = alpha_hat;
  result.K = K;
  const double lambda_naive = naive_lambda_max(alpha_hat);

  Eigen::MatrixXd adversary_block;
  if (config.adversary.kind == "file") {
    adversary_block = read_symf64(config.adversary.path).dense();
  }

  std::string csv = "replication,arm,t,correlation_with_clean,objective_on_clean\n";
  nlohmann::json reps = nlohmann::json::array();

  for (int r = 0; r < config.replications; ++r) {
    auto t0 = clock_type::now();
    ReplicationRecord rec;
    rec.index = r;
    rec.seed_matrix = experiment_seed(config.master_seed, r, 1);
    rec.seed_support = experiment_seed(config.master_seed, r, 2);
    rec.seed_adversary = experiment_seed(config.master_seed, r, 3);
    rec.seed_cleaning = experiment_seed(config.master_seed, r, 4);

    SymmetricMatrix X = gen_symmetric_iid(n, dist, rec.seed_matrix);
    SymmetricMatrix Y = X;
    const int m = static_cast<int>(std::ceil(config.eps * n));
    if (config.eps > 0.0 && config.adversary.kind != "none" && m > 0) {
      std::vector<int> support = random_support(n, config.eps, rec.seed_support);
      Eigen::MatrixXd block;
      if (config.adversary.kind == "wishart") {
        block = wishart_adversary(m, config.adversary.rank, config.adversary.target_frobenius,
                                  rec.seed_adversary);
      } else {
        if (adversary_block.rows() != m)
          throw std::invalid_argument("adversary file block size does not match ceil(eps*n)");
        block = adversary_block;
      }
      CorruptedInstance inst = corrupt_principal_minor(X, support, block, rec.seed_support);
      Y = std::move(inst.corrupted);
    }

    OnsagerEstimator est;  // empirical
    AmpTrace arm_a = run_amp(X, schedule, T, est, scaling);
    AmpTrace arm_b = run_amp(Y, schedule, T, est, scaling);
    AmpTrace arm_c = run_amp(naive_clean(Y, lambda_naive), schedule, T, est, scaling);
    RobustOptions ropts;
    ropts.c_t = config.c_t;
    ropts.tol = config.tol;
    ropts.scaling = scaling;
    RobustResult arm_d = robust_amp(Y, schedule, T, config.eps, K, rec.seed_cleaning, ropts);

    rec.removed = static_cast<int>(arm_d.cleaning.removed.size());
    rec.power_iter_calls = arm_d.cleaning.power_iter_calls();
    rec.final_norm = arm_d.cleaning.norm_trace.back();

    const std::array<const AmpTrace*, 4> arms = {&arm_a, &arm_b, &arm_c, &arm_d.trace};
    const char* names = "abcd";
    std::array<std::pair<double, double>, 4> finals{};
    char line[128];
    for (int ai = 0; ai < 4; ++ai) {
      for (int t = 0; t <= T; ++t) {
        Vector w = report_vector(arms[static_cast<std::size_t>(ai)]->iterates[static_cast<std::size_t>(t)],
                                 config.rounding);
        Vector wa = report_vector(arm_a.iterates[static_cast<std::size_t>(t)], config.rounding);
        double na = w.norm() * wa.norm();
        double corr = na > 0.0 ? w.dot(wa) / na : 0.0;
        double nw = w.squaredNorm();
        double obj = nw > 0.0 ? w.dot(symv(X, w)) / nw : 0.0;
        std::snprintf(line, sizeof(line), "%d,%c,%d,%.17g,%.17g\n", r, names[ai], t, corr, obj);
        csv += line;
        if (t == T) finals[static_cast<std::size_t>(ai)] = {corr, obj};
      }
    }
    result.final_metrics.push_back(finals);

    rec.runtime_ms = ms_since(t0);
    result.replications.push_back(rec);
    reps.push_back({{"index", r},
                    {"seeds",
                     {{"matrix", rec.seed_matrix},
                      {"support", rec.seed_support},
                      {"adversary", rec.seed_adversary},
                      {"cleaning", rec.seed_cleaning}}},
                    {"cleaning",
                     {{"removed", rec.removed},
                      {"power_iter_calls", rec.power_iter_calls},
                      {"final_norm", rec.final_norm}}},
                    {"runtime_ms", rec.runtime_ms}});
  }

  nlohmann::json manifest;
  manifest["schema"] = "robust-amp/1";
  manifest["kind"] = "experiment-manifest";
  manifest["config"] = nlohmann::json::parse(to_json(config));
  manifest["alpha_hat"] = alpha_hat;
  manifest["K"] = K;
  manifest["naive_lambda_max"] = lambda_naive;
  manifest["replications"] = reps;
  manifest["outputs"] = {{"csv", "experiment.csv"}};

  result.csv = std::move(csv);
  result.manifest = manifest.dump(2);
  return result;
}

void write_experiment_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + config.out_dir);
  auto write = [&](const std::string& name, const std::string& data) {
    std::ofstream out(fs::path(config.out_dir) / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + name + " under " + config.out_dir);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("short write: " + name);
  };
  write("experiment.csv", result.csv);
  write("manifest.json", result.manifest);
}

}  // namespace ramp
