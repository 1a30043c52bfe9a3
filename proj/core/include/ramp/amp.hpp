#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramp/denoisers.hpp"
#include "ramp/matrix.hpp"
#include "ramp/rmatrix.hpp"
#include "ramp/spectra.hpp"

namespace ramp {

/// Lower-triangular Onsager coefficient table: row t holds B_{t,1}..B_{t,t}
/// (the coefficients used when forming x^(t+1)); row 0 is empty.
using OnsagerTable = std::vector<std::vector<double>>;

/// Iterates and Onsager bookkeeping of one AMP run.
struct AmpTrace {
  std::vector<Vector> iterates;  // x^(0..T); iterates[0] is the all-ones vector
  OnsagerTable onsager;          // onsager[t][j-1] = B_{t,j}
  bool clipped = false;
  std::optional<ClipConfig> clip_cfg;
  std::vector<Vector> unclipped;  // pre-clip intermediates y~^(1..T), clipped runs only

  int T() const { return static_cast<int>(iterates.size()) - 1; }
  const Vector& final_iterate() const { return iterates.back(); }
};

enum class OnsagerMode { Empirical, MonteCarlo };

/// How B_{t,j} is obtained. Empirical uses b_{t,j} from the current run's
/// iterates. MonteCarlo estimates B_{t,j} = E_X[b_{t,j}] by averaging b over
/// fresh clean-matrix runs drawn from `dist` at the same dimension.
struct OnsagerEstimator {
  OnsagerMode mode = OnsagerMode::Empirical;
  int mc_samples = 8;
  EntryDistribution dist = EntryDistribution::gaussian();
  std::uint64_t seed = 0;
};

/// Iterate post-processing.
///
/// Raw follows the recursion literally. Stabilized rescales each new iterate
/// to ||x|| = sqrt(n) (in clipped runs: scale by sqrt(n)/||clip(w)||, then
/// clip). Raw is the library default; the experiment harness defaults to
/// Stabilized, which keeps the entry scale the clip cutoff is calibrated for
/// and suppresses the finite-n norm drift of long relu schedules.
enum class IterateScaling { Raw, Stabilized };

/// b_{t,j}: normalized divergence (1/n) sum_i d f_t / d u^j at coordinate i's
/// history. Requires 1 <= j <= t and iterates.size() >= t+1.
double onsager_b(const DenoiserSchedule& schedule, const std::vector<Vector>& iterates, int t,
                 int j);

/// Precomputed Monte-Carlo Onsager table (averaged empirical b over
/// `samples` fresh clean runs of length T at dimension n).
OnsagerTable precompute_onsager_mc(const DenoiserSchedule& schedule, int T, int n,
                                   EntryDistribution dist, int samples, std::uint64_t seed);

/// The AMP iteration: x^(0) = 1, x^(t+1) = X f_t(x^(t..0)) - sum_{j=1..t}
/// B_{t,j} f_{j-1}(x^(j-1..0)).
AmpTrace run_amp(const SymmetricMatrix& X, const DenoiserSchedule& schedule, int T,
                 const OnsagerEstimator& estimator = {},
                 IterateScaling scaling = IterateScaling::Raw);

/// Same recursion, but every new iterate passes through clip(., cfg) before
/// being stored and used downstream; y^(0) = 1 stays unclipped. The pre-clip
/// intermediates are kept in the trace for diagnostics.
AmpTrace run_clipped_amp(const SymmetricMatrix& Y_hat, const DenoiserSchedule& schedule, int T,
                         const ClipConfig& clip_cfg, const OnsagerEstimator& estimator = {},
                         IterateScaling scaling = IterateScaling::Raw);

/// Engine entry with a fixed coefficient table (no estimation); used when two
/// runs must share identical Onsager constants.
AmpTrace run_amp_fixed(const SymmetricMatrix& M, const DenoiserSchedule& schedule, int T,
                       const OnsagerTable& table,
                       const std::optional<ClipConfig>& clip_cfg = std::nullopt,
                       IterateScaling scaling = IterateScaling::Raw);

struct RobustResult {
  Vector v_hat;  // y^(T), the raw final clipped iterate
  CleaningResult cleaning;
  AmpTrace trace;
};

struct RobustOptions {
  double c_t = 16.0;
  double tol = 1e-6;
  OnsagerEstimator estimator{};
  IterateScaling scaling = IterateScaling::Raw;
};

/// spectral_clean(Y, K), then the clipped iteration with
/// ClipConfig::make(eps, c_t) on the cleaned matrix.
RobustResult robust_amp(const SymmetricMatrix& Y, const DenoiserSchedule& schedule, int T,
                        double eps, double K, std::uint64_t seed, const RobustOptions& opts = {});

/// relu then project to the unit sphere. Throws on relu(v) == 0.
Vector round_nonneg(const Vector& v);

/// Coordinate signs scaled to the unit sphere; sign(0) := +1.
Vector round_hypercube(const Vector& v);

}  // namespace ramp
