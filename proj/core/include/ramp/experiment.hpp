#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ramp/amp.hpp"
#include "ramp/io.hpp"
#include "ramp/rmatrix.hpp"

namespace ramp {

/// Perturbation source for the corrupted arm. "wishart" draws the difference
/// of two Frobenius-normalized Wishart blocks, "file" embeds a stored
/// symmetric block (SYMF64), "none" leaves the matrix clean.
struct AdversarySpec {
  std::string kind = "wishart";
  int rank = 0;
  double target_frobenius = 0.0;
  std::string path;
};

/// Cleaning threshold policy. "auto" = 5 * alpha_hat (the guarantee
/// threshold), "expected" = alpha_hat * (1 + delta) (clean down to the
/// larger-than-expected level), "explicit" = value.
struct KSpec {
  std::string mode = "auto";
  double value = 0.0;
  double delta = 0.05;
  int alpha_samples = 10;
};

struct ExperimentConfig {
  int n = 1000;
  double eps = 0.02;
  int T = 30;
  std::string dist = "gaussian";  // gaussian | rademacher
  ScheduleSpec schedule;
  AdversarySpec adversary;
  double c_t = 16.0;
  KSpec K;
  std::string rounding = "nonneg";     // nonneg | hypercube | none
  std::string scaling = "stabilized";  // stabilized | raw
  double tol = 1e-6;
  std::uint64_t master_seed = 1;
  int replications = 1;
  std::string out_dir = "out";

  /// Empty when valid; otherwise one message per violated constraint.
  std::vector<std::string> validate() const;

  EntryDistribution entry_distribution() const;
  IterateScaling iterate_scaling() const;
};

std::string to_json(const ExperimentConfig& c);
/// Accepts either a bare config object or a manifest (the embedded "config"
/// object is used), so a manifest re-runs bit-identically.
ExperimentConfig experiment_config_from_json(const std::string& text);

struct ReplicationRecord {
  int index = 0;
  std::uint64_t seed_matrix = 0, seed_support = 0, seed_adversary = 0, seed_cleaning = 0;
  int removed = 0;
  int power_iter_calls = 0;
  double final_norm = 0.0;
  double runtime_ms = 0.0;
};

struct ExperimentResult {
  std::string csv;       // replication,arm,t,correlation_with_clean,objective_on_clean
  std::string manifest;  // JSON; embeds the config and all derived seeds
  double alpha_hat = 0.0;
  double K = 0.0;
  std::vector<ReplicationRecord> replications;
  /// final-iteration metrics per (replication, arm 'a'..'d'): corr and obj
  std::vector<std::array<std::pair<double, double>, 4>> final_metrics;
};

/// Runs all four arms for each replication:
///   a: AMP on the clean X          b: AMP on the corrupted Y
///   c: AMP on naive_clean(Y)       d: robust_amp on Y
/// and reports per-iteration correlation with arm a and objective on X.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes experiment.csv and manifest.json under config.out_dir.
void write_experiment_outputs(const ExperimentConfig& config, const ExperimentResult& result);

/// Derived per-replication seed streams (shared with the CLI stage commands).
std::uint64_t experiment_seed(std::uint64_t master, int replication, int role);

}  // namespace ramp
