#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramp/matrix.hpp"
#include "ramp/rmatrix.hpp"

namespace ramp {

/// Result of a largest-magnitude eigenpair estimate.
struct NormEstimate {
  double value = 0.0;  // estimated |lambda_max| = ||M||_op
  Vector eigvec;       // unit vector
  int iterations = 0;
  bool converged = false;
};

/// Default iteration budget for power iteration: 50 * ceil(log n).
int default_power_iters(int n);

/// Largest-magnitude eigenpair by power iteration with a seeded random start.
///
/// Convergence is tracked on the norm estimate ||M v_k||; near-degenerate
/// +/-lambda pairs are detected (Rayleigh-quotient sign flips, or a
/// persistent gap between |v' M v| and ||M v||) and the iteration switches to
/// M^2 with a final sign-resolving projection, so the returned eigvec always
/// satisfies value == |eigvec' M eigvec| up to the tolerance.
///
/// max_iters <= 0 selects the default budget. A zero matrix returns value 0,
/// an arbitrary unit eigvec and converged = true.
NormEstimate top_eigpair(const SymmetricMatrix& M, double tol, int max_iters, std::uint64_t seed);

/// Warm-started variant used by the cleaning loop.
NormEstimate top_eigpair_from(const SymmetricMatrix& M, double tol, int max_iters, Vector start);

/// Outcome of the randomized cleaning loop.
struct CleaningResult {
  SymmetricMatrix cleaned;        // equals restricted(input, removed) exactly
  std::vector<int> removed;       // removal order, no duplicates
  std::vector<double> norm_trace; // operator-norm estimate before each removal,
                                  // plus the final accepting estimate
  double threshold = 0.0;         // K
  double tol = 0.0;
  std::uint64_t seed = 0;

  /// One power-iteration call per norm_trace entry.
  int power_iter_calls() const { return static_cast<int>(norm_trace.size()); }
};

/// While the estimated operator norm exceeds K: take the top eigenvector v,
/// sample an index i with probability v_i^2 (renormalized), zero row/column i.
/// Terminates because no index is removable twice. Deterministic given
/// (Y, K, tol, seed).
CleaningResult spectral_clean(const SymmetricMatrix& Y, double K, double tol, std::uint64_t seed);

/// Monte-Carlo estimate of E[||X||_op] over fresh samples from dist.
double expected_opnorm(int n, EntryDistribution dist, int samples, std::uint64_t seed);

/// JSON per the interface: {threshold, removed, norm_trace, tol, seed}.
std::string to_json(const CleaningResult& r);

}  // namespace ramp
