#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ramp/matrix.hpp"

namespace ramp {

enum class EntryKind { Gaussian, Rademacher };

/// Entry law for the random symmetric ensembles. Entries have mean 0 and,
/// after the 1/sqrt(n) scaling applied at sampling time, variance 1/n.
struct EntryDistribution {
  EntryKind kind = EntryKind::Gaussian;
  double scale = 0.0;  // stddev of one entry; filled in with 1/sqrt(n) when sampling

  static EntryDistribution gaussian() { return {EntryKind::Gaussian, 0.0}; }
  static EntryDistribution rademacher() { return {EntryKind::Rademacher, 0.0}; }
};

/// A clean matrix, its principal-minor corruption, and the provenance needed
/// to regenerate both.
struct CorruptedInstance {
  SymmetricMatrix clean;      // X
  SymmetricMatrix corrupted;  // Y
  std::vector<int> support;   // S, sorted ascending
  double eps = 0.0;           // |support| / n
  std::uint64_t seed = 0;     // provenance of the support/perturbation draw (0 if explicit)
};

/// Samples a symmetric matrix with i.i.d. upper-triangle entries (diagonal
/// included) of mean 0 and variance 1/n; the lower triangle mirrors the
/// upper. Deterministic given the seed.
SymmetricMatrix gen_symmetric_iid(int n, EntryDistribution dist, std::uint64_t seed);

/// Y = X + embed(perturbation, support). The perturbation must be a symmetric
/// |support| x |support| block; support indices must be in range and unique.
CorruptedInstance corrupt_principal_minor(const SymmetricMatrix& X, std::vector<int> support,
                                          const Eigen::MatrixXd& perturbation,
                                          std::uint64_t seed = 0);

/// Difference of two independently sampled Wishart matrices G G^T (G an
/// m x rank standard Gaussian), each rescaled so its realized Frobenius norm
/// equals target_frobenius.
Eigen::MatrixXd wishart_adversary(int m, int rank, double target_frobenius, std::uint64_t seed);

/// Zeroes the rows and columns listed in `removed`; everything else is
/// copied bit-for-bit.
SymmetricMatrix restricted(const SymmetricMatrix& Y, const std::vector<int>& removed);

/// Uniformly random ceil(eps*n)-subset of [n], sorted ascending.
std::vector<int> random_support(int n, double eps, std::uint64_t seed);

}  // namespace ramp
