// ramp: experiment harness and stage-level commands for robust AMP on
// adversarially corrupted random symmetric matrices.
//
// Subcommands: experiment, gen, corrupt, clean, amp, robust, se, metrics.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "ramp/amp.hpp"
#include "ramp/eig.hpp"
#include "ramp/experiment.hpp"
#include "ramp/io.hpp"
#include "ramp/rng.hpp"
#include "ramp/spectra.hpp"
#include "ramp/verify.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text(const std::string& path, const std::string& data) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
}

ramp::EntryDistribution parse_dist(const std::string& d) {
  if (d == "gaussian") return ramp::EntryDistribution::gaussian();
  if (d == "rademacher") return ramp::EntryDistribution::rademacher();
  throw CLI::ValidationError("--dist must be gaussian|rademacher");
}

ramp::ScheduleSpec parse_schedule(const std::string& text) {
  if (text.empty()) return ramp::ScheduleSpec{};
  if (text == "relu" || text == "identity") {
    ramp::ScheduleSpec s;
    s.type = text;
    return s;
  }
  return ramp::schedule_spec_from_json(text);
}

double resolve_K(const std::string& kmode, int n, const ramp::EntryDistribution& dist,
                 int alpha_samples, double delta, std::uint64_t seed) {
  if (kmode == "auto")
    return 5.0 * ramp::expected_opnorm(n, dist, alpha_samples, ramp::derive_seed(seed, 0xa1faULL));
  if (kmode == "expected")
    return ramp::expected_opnorm(n, dist, alpha_samples, ramp::derive_seed(seed, 0xa1faULL)) *
           (1.0 + delta);
  return std::stod(kmode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust AMP simulation on corrupted random symmetric matrices"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out = "out";
  std::string config_path;
  int threads = 0;
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--out", out, "output file or directory")->capture_default_str();
  app.add_option("--config", config_path, "JSON config (experiment: config or manifest)");
  app.add_option("--threads", threads, "matvec threads (0 = library default)");

  // experiment
  auto* cmd_exp = app.add_subcommand("experiment", "run the four-arm corruption experiment");
  // gen
  auto* cmd_gen = app.add_subcommand("gen", "sample a random symmetric matrix (SYMF64)");
  int gen_n = 1000;
  std::string gen_dist = "gaussian";
  cmd_gen->add_option("--n", gen_n, "dimension")->required();
  cmd_gen->add_option("--dist", gen_dist, "gaussian|rademacher")->capture_default_str();
  // corrupt
  auto* cmd_cor = app.add_subcommand("corrupt", "plant a principal-minor corruption");
  std::string cor_in, cor_block;
  double cor_eps = 0.02, cor_frob = 100.0;
  int cor_rank = 0;
  cmd_cor->add_option("--in", cor_in, "clean matrix (SYMF64)")->required();
  cmd_cor->add_option("--eps", cor_eps, "corruption fraction")->capture_default_str();
  cmd_cor->add_option("--wishart-rank", cor_rank, "Wishart rank (default (5/6)*eps*n)");
  cmd_cor->add_option("--wishart-frob", cor_frob, "Wishart Frobenius target")->capture_default_str();
  cmd_cor->add_option("--block", cor_block, "explicit symmetric block file instead of Wishart");
  // clean
  auto* cmd_cln = app.add_subcommand("clean", "spectral cleaning loop");
  std::string cln_in, cln_K = "auto";
  double cln_tol = 1e-6, cln_delta = 0.05;
  int cln_alpha_samples = 10;
  std::string cln_dist = "gaussian";
  cmd_cln->add_option("--in", cln_in, "matrix (SYMF64)")->required();
  cmd_cln->add_option("--K", cln_K, "auto | expected | <value>")->capture_default_str();
  cmd_cln->add_option("--tol", cln_tol, "power-iteration tolerance")->capture_default_str();
  cmd_cln->add_option("--alpha-samples", cln_alpha_samples, "samples for alpha_hat")->capture_default_str();
  cmd_cln->add_option("--delta", cln_delta, "margin for K=expected")->capture_default_str();
  cmd_cln->add_option("--dist", cln_dist, "entry law for alpha_hat")->capture_default_str();
  // amp
  auto* cmd_amp = app.add_subcommand("amp", "run the AMP iteration");
  std::string amp_in, amp_sched = "relu", amp_scaling = "stabilized", amp_final;
  int amp_T = 30;
  cmd_amp->add_option("--in", amp_in, "matrix (SYMF64)")->required();
  cmd_amp->add_option("--schedule", amp_sched, "relu|identity|JSON spec")->capture_default_str();
  cmd_amp->add_option("--T", amp_T, "iterations")->capture_default_str();
  cmd_amp->add_option("--scaling", amp_scaling, "stabilized|raw")->capture_default_str();
  cmd_amp->add_option("--save-final", amp_final, "also write final iterate (VECF64)");
  // robust
  auto* cmd_rob = app.add_subcommand("robust", "spectral cleaning + clipped AMP");
  std::string rob_in, rob_sched = "relu", rob_scaling = "stabilized", rob_K = "auto";
  std::string rob_dist = "gaussian";
  int rob_T = 30, rob_alpha_samples = 10;
  double rob_eps = 0.02, rob_ct = 16.0, rob_tol = 1e-6, rob_delta = 0.05;
  cmd_rob->add_option("--in", rob_in, "corrupted matrix (SYMF64)")->required();
  cmd_rob->add_option("--eps", rob_eps, "corruption fraction")->capture_default_str();
  cmd_rob->add_option("--T", rob_T, "iterations")->capture_default_str();
  cmd_rob->add_option("--schedule", rob_sched, "relu|identity|JSON spec")->capture_default_str();
  cmd_rob->add_option("--K", rob_K, "auto | expected | <value>")->capture_default_str();
  cmd_rob->add_option("--c-t", rob_ct, "clip constant C_T")->capture_default_str();
  cmd_rob->add_option("--tol", rob_tol, "power-iteration tolerance")->capture_default_str();
  cmd_rob->add_option("--scaling", rob_scaling, "stabilized|raw")->capture_default_str();
  cmd_rob->add_option("--alpha-samples", rob_alpha_samples, "samples for alpha_hat")->capture_default_str();
  cmd_rob->add_option("--delta", rob_delta, "margin for K=expected")->capture_default_str();
  cmd_rob->add_option("--dist", rob_dist, "entry law for alpha_hat")->capture_default_str();
  // se
  auto* cmd_se = app.add_subcommand("se", "state-evolution covariance (Monte Carlo)");
  std::string se_sched = "relu";
  int se_T = 5, se_samples = 100000;
  cmd_se->add_option("--schedule", se_sched, "relu|identity|JSON spec")->capture_default_str();
  cmd_se->add_option("--T", se_T, "levels")->capture_default_str();
  cmd_se->add_option("--samples", se_samples, "Monte-Carlo samples per level")->capture_default_str();
  // metrics
  auto* cmd_met = app.add_subcommand("metrics", "correlation/objective/error vs a clean run");
  std::string met_vhat, met_clean, met_matrix;
  cmd_met->add_option("--vhat", met_vhat, "output vector (VECF64)")->required();
  cmd_met->add_option("--clean", met_clean, "clean AMP final iterate (VECF64)")->required();
  cmd_met->add_option("--matrix", met_matrix, "clean matrix (SYMF64)")->required();

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (cmd_exp->parsed()) {
      ramp::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = ramp::experiment_config_from_json(read_text(config_path));
      if (app.count("--seed")) cfg.master_seed = seed;
      if (app.count("--out")) cfg.out_dir = out;
      auto errs = cfg.validate();
      if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
      }
      auto result = ramp::run_experiment(cfg);
      ramp::write_experiment_outputs(cfg, result);
      std::printf("alpha_hat=%.6f K=%.6f replications=%d -> %s/experiment.csv\n", result.alpha_hat,
                  result.K, cfg.replications, cfg.out_dir.c_str());
      return 0;
    }
    if (cmd_gen->parsed()) {
      auto M = ramp::gen_symmetric_iid(gen_n, parse_dist(gen_dist), seed);
      ramp::write_symf64(out, M, seed);
      std::printf("wrote %s (n=%d)\n", out.c_str(), gen_n);
      return 0;
    }
    if (cmd_cor->parsed()) {
      auto X = ramp::read_symf64(cor_in);
      int n = X.size();
      int m = static_cast<int>(std::ceil(cor_eps * n));
      if (m < 1) throw std::runtime_error("eps too small: empty support");
      auto support = ramp::random_support(n, cor_eps, ramp::derive_seed(seed, 2));
      Eigen::MatrixXd block;
      if (!cor_block.empty()) {
        block = ramp::read_symf64(cor_block).dense();
      } else {
        int rank = cor_rank > 0 ? cor_rank : std::max(1, static_cast<int>(std::lround(5.0 / 6.0 * cor_eps * n)));
        block = ramp::wishart_adversary(m, rank, cor_frob, ramp::derive_seed(seed, 3));
      }
      auto inst = ramp::corrupt_principal_minor(X, support, block, seed);
      ramp::write_symf64(out, inst.corrupted, seed);
      nlohmann::json j;
      j["schema"] = "robust-amp/1";
      j["eps"] = inst.eps;
      j["support"] = inst.support;
      j["seed"] = seed;
      write_text(out + ".json", j.dump(2));
      std::printf("wrote %s and %s.json (|support|=%zu)\n", out.c_str(), out.c_str(),
                  inst.support.size());
      return 0;
    }
    if (cmd_cln->parsed()) {
      auto Y = ramp::read_symf64(cln_in);
      double K = resolve_K(cln_K, Y.size(), parse_dist(cln_dist), cln_alpha_samples, cln_delta, seed);
      auto res = ramp::spectral_clean(Y, K, cln_tol, seed);
      ramp::write_symf64(out, res.cleaned, seed);
      write_text(out + ".json", ramp::to_json(res));
      std::printf("K=%.4f removed=%zu final_norm=%.4f -> %s\n", K, res.removed.size(),
                  res.norm_trace.back(), out.c_str());
      return 0;
    }
    if (cmd_amp->parsed()) {
      auto X = ramp::read_symf64(amp_in);
      auto spec = parse_schedule(amp_sched);
      int T = spec.T > 0 ? spec.T : amp_T;
      auto scaling = amp_scaling == "raw" ? ramp::IterateScaling::Raw : ramp::IterateScaling::Stabilized;
      auto trace = ramp::run_amp(X, spec.build(T), T, {}, scaling);
      write_text(out, ramp::trace_to_csv(trace));
      if (!amp_final.empty()) ramp::write_vecf64(amp_final, trace.final_iterate(), seed);
      std::printf("T=%d -> %s\n", T, out.c_str());
      return 0;
    }
    if (cmd_rob->parsed()) {
      auto Y = ramp::read_symf64(rob_in);
      auto spec = parse_schedule(rob_sched);
      int T = spec.T > 0 ? spec.T : rob_T;
      double K = resolve_K(rob_K, Y.size(), parse_dist(rob_dist), rob_alpha_samples, rob_delta, seed);
      ramp::RobustOptions opts;
      opts.c_t = rob_ct;
      opts.tol = rob_tol;
      opts.scaling = rob_scaling == "raw" ? ramp::IterateScaling::Raw : ramp::IterateScaling::Stabilized;
      auto res = ramp::robust_amp(Y, spec.build(T), T, rob_eps, K, seed, opts);
      ramp::write_vecf64(out, res.v_hat, seed);
      write_text(out + ".cleaning.json", ramp::to_json(res.cleaning));
      write_text(out + ".trace.csv", ramp::trace_to_csv(res.trace));
      std::printf("K=%.4f removed=%zu -> %s\n", K, res.cleaning.removed.size(), out.c_str());
      return 0;
    }
    if (cmd_se->parsed()) {
      auto spec = parse_schedule(se_sched);
      int T = spec.T > 0 ? spec.T : se_T;
      auto model = ramp::se_covariance(spec.build(T), T, se_samples, seed);
      write_text(out, ramp::to_json(model));
      std::printf("T=%d samples=%d -> %s\n", T, se_samples, out.c_str());
      return 0;
    }
    if (cmd_met->parsed()) {
      auto vhat = ramp::read_vecf64(met_vhat);
      auto clean = ramp::read_vecf64(met_clean);
      auto X = ramp::read_symf64(met_matrix);
      ramp::AmpTrace pseudo;
      pseudo.iterates.push_back(clean);
      auto rep = ramp::metrics(vhat, pseudo, X);
      write_text(out, ramp::to_json(rep));
      std::printf("correlation=%.6f objective_clean=%.6f error_ratio=%.6f\n", rep.correlation,
                  rep.objective_clean, rep.error_ratio);
      return 0;
    }
  } catch (const ramp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
