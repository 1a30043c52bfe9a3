#include "ramp/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "ramp/rng.hpp"

#include <nlohmann/json.hpp>

namespace ramp {

int default_power_iters(int n) {
  double ln = std::log(static_cast<double>(std::max(n, 2)));
  return 50 * static_cast<int>(std::ceil(ln));
}

namespace {

Vector random_unit(int n, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
  double nv = v.norm();
  if (nv == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / nv;
}

}  // namespace

NormEstimate top_eigpair_from(const SymmetricMatrix& M, double tol, int max_iters, Vector start) {
  const int n = M.size();
  if (!(tol > 0)) throw std::invalid_argument("top_eigpair: tol must be > 0");
  if (start.size() != n) throw std::invalid_argument("top_eigpair: start vector has wrong size");
  if (max_iters <= 0) max_iters = default_power_iters(n);

  NormEstimate out;
  double sn = start.norm();
  if (sn == 0.0) {
    start.setZero();
    start(0) = 1.0;
  } else {
    start /= sn;
  }

  if (M.max_abs() == 0.0) {
    out.value = 0.0;
    out.eigvec = start;
    out.converged = true;
    return out;
  }

  Vector v = std::move(start);
  Vector w(n), w2(n);
  bool squared = false;
  double est_prev = -1.0;
  double rq_prev = 0.0;
  int flips = 0;
  int stall = 0;
  int stable = 0;

  for (int k = 1; k <= max_iters; ++k) {
    out.iterations = k;
    symv(M, v, w);
    double est = w.norm();  // ||M v||, v unit
    double rq = v.dot(w);   // v' M v
    if (est == 0.0) {
      // v fell into the kernel of a nonzero matrix; deterministic restart
      v.setZero();
      v(k % n) = 1.0;
      est_prev = -1.0;
      stable = 0;
      continue;
    }
    if (!squared) {
      if (k >= 2 && std::signbit(rq) != std::signbit(rq_prev)) ++flips;
      if (std::abs(rq) < 0.9 * est) ++stall; else stall = 0;
      if (flips >= 3 || stall >= 8) {
        squared = true;
        stable = 0;
      }
    }
    rq_prev = rq;

    if (est_prev >= 0.0 && std::abs(est - est_prev) <= tol * est) {
      if (++stable >= 2) {
        out.converged = true;
        v = w / est;
        break;
      }
    } else {
      stable = 0;
    }
    est_prev = est;

    if (squared) {
      symv(M, w, w2);
      double n2 = w2.norm();
      if (n2 == 0.0) {
        v = w / est;
        continue;
      }
      v = w2 / n2;
    } else {
      v = w / est;
    }
  }

  // Final packaging: make sure the reported vector is an eigenvector, not a
  // +/-lambda mixture (possible after M^2 iteration or an undetected
  // degenerate pair).
  symv(M, v, w);
  double est = w.norm();
  double rq = v.dot(w);
  if (est > 0.0 && std::abs(rq) < (1.0 - 10.0 * tol) * est) {
    Vector u = w / est;
    Vector vp = v + u;
    Vector vm = v - u;
    Vector& pick = (vp.norm() >= vm.norm()) ? vp : vm;
    double pn = pick.norm();
    if (pn > 0.0) {
      v = pick / pn;
      symv(M, v, w);
      rq = v.dot(w);
    }
  }
  out.value = std::abs(rq);
  out.eigvec = std::move(v);
  return out;
}

NormEstimate top_eigpair(const SymmetricMatrix& M, double tol, int max_iters, std::uint64_t seed) {
  Rng rng(seed);
  return top_eigpair_from(M, tol, max_iters, random_unit(M.size(), rng));
}

CleaningResult spectral_clean(const SymmetricMatrix& Y, double K, double tol, std::uint64_t seed) {
  if (!(K > 0)) throw std::invalid_argument("spectral_clean: K must be > 0");
  const int n = Y.size();
  Rng rng(derive_seed(seed, 0x636c65616eULL));  // "clean"

  CleaningResult res{Y, {}, {}, K, tol, seed};
  SymmetricMatrix& work = res.cleaned;
  Vector start = random_unit(n, rng);

  while (true) {
    NormEstimate est = top_eigpair_from(work, tol, 0, start);
    res.norm_trace.push_back(est.value);
    if (est.value <= K) break;
    if (static_cast<int>(res.removed.size()) == n) break;  // nothing left to remove

    // sample i with probability v_i^2 (renormalized)
    Vector p = est.eigvec.array().square();
    double total = p.sum();
    double u = rng.uniform() * total;
    int pick = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += p(i);
      if (u <= acc) {
        pick = i;
        break;
      }
    }
    work.zero_row_col(pick);
    res.removed.push_back(pick);

    // warm start: previous eigenvector with the removed coordinate zeroed,
    // plus a small random component so it cannot sit orthogonal to the new
    // dominant eigenvector
    start = est.eigvec;
    start(pick) = 0.0;
    start += 1e-3 * random_unit(n, rng);
  }
  return res;
}

double expected_opnorm(int n, EntryDistribution dist, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("expected_opnorm: samples must be >= 1");
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t child = derive_seed(seed, 0xa1fa0000ULL + static_cast<std::uint64_t>(s));
    SymmetricMatrix X = gen_symmetric_iid(n, dist, child);
    NormEstimate est = top_eigpair(X, 1e-4, 0, derive_seed(child, 1));
    acc += est.value;
  }
  return acc / samples;
}

std::string to_json(const CleaningResult& r) {
  nlohmann::json j;
  j["threshold"] = r.threshold;
  j["removed"] = r.removed;
  j["norm_trace"] = r.norm_trace;
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  return j.dump(2);
}

}  // namespace ramp
