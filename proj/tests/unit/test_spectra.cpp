#include <doctest.h>

#include <cmath>

#include "ramp/eig.hpp"
#include "ramp/rmatrix.hpp"
#include "ramp/spectra.hpp"

using namespace ramp;

TEST_CASE("top_eigpair: diagonal spectrum picks the largest magnitude") {
  SymmetricMatrix M(3);
  M.set(0, 0, 3.0);
  M.set(1, 1, -5.0);
  M.set(2, 2, 1.0);
  auto est = top_eigpair(M, 1e-10, 10000, 42);
  CHECK(est.value == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(std::abs(est.eigvec(1)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("top_eigpair: zero matrix") {
  SymmetricMatrix M(4);
  auto est = top_eigpair(M, 1e-6, 100, 1);
  CHECK(est.value == 0.0);
  CHECK(est.converged);
  CHECK(est.eigvec.norm() == doctest::Approx(1.0));
}

TEST_CASE("top_eigpair: matches the dense eigensolver on random 50x50") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    auto M = gen_symmetric_iid(50, EntryDistribution::gaussian(), 3000 + s);
    auto est = top_eigpair(M, 1e-10, 20000, s);
    double truth = dense_opnorm(M);
    CHECK(est.value == doctest::Approx(truth).epsilon(1e-6));
    // eigvec is a genuine eigenvector: value == |v' M v| up to tolerance
    double rq = est.eigvec.dot(symv(M, est.eigvec));
    CHECK(est.value == doctest::Approx(std::abs(rq)).epsilon(1e-8));
  }
}

TEST_CASE("top_eigpair: near-degenerate +/- pair") {
  // exactly opposite eigenvalues: plain power iteration cannot separate
  SymmetricMatrix M(4);
  M.set(0, 0, 2.0);
  M.set(1, 1, -2.0);
  M.set(2, 2, 0.5);
  M.set(3, 3, -0.5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto est = top_eigpair(M, 1e-9, 5000, s);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-6));
    // returned vector sits on one branch, not a mixture
    double rq = est.eigvec.dot(symv(M, est.eigvec));
    CHECK(std::abs(rq) == doctest::Approx(2.0).epsilon(1e-5));
  }
}

TEST_CASE("spectral_clean: below threshold is a no-op") {
  auto Y = gen_symmetric_iid(100, EntryDistribution::gaussian(), 5);
  auto res = spectral_clean(Y, 50.0, 1e-6, 3);
  CHECK(res.removed.empty());
  CHECK(res.cleaned == Y);
  CHECK(res.norm_trace.size() == 1);
  CHECK(res.norm_trace[0] <= 50.0);
}

TEST_CASE("spectral_clean: planted spike is removed with high probability" * doctest::timeout(300)) {
  const int n = 500;
  int hits = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto X = gen_symmetric_iid(n, EntryDistribution::gaussian(), 9000 + s);
    SymmetricMatrix Y = X;
    Y.set(0, 0, Y(0, 0) + 100.0);
    auto res = spectral_clean(Y, 10.0, 1e-4, s);
    if (res.removed.size() == 1 && res.removed[0] == 0) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("spectral_clean: structural invariants and determinism") {
  auto X = gen_symmetric_iid(200, EntryDistribution::gaussian(), 31);
  SymmetricMatrix Y = X;
  // plant a few spikes so several rounds run
  for (int i : {3, 50, 140}) Y.set(i, i, Y(i, i) + 30.0);
  auto a = spectral_clean(Y, 6.0, 1e-5, 77);
  auto b = spectral_clean(Y, 6.0, 1e-5, 77);
  CHECK(a.removed == b.removed);
  CHECK(a.norm_trace == b.norm_trace);

  CHECK(a.cleaned == restricted(Y, a.removed));
  CHECK(a.power_iter_calls() == static_cast<int>(a.removed.size()) + 1);
  for (std::size_t i = 0; i + 1 < a.norm_trace.size(); ++i) CHECK(a.norm_trace[i] > 6.0);
  CHECK(a.norm_trace.back() <= 6.0);
  // no duplicates
  auto sorted = a.removed;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("spectral_clean: clean matrices at K = 5 alpha_hat stay untouched") {
  double alpha = expected_opnorm(500, EntryDistribution::gaussian(), 3, 11);
  double K = 5.0 * alpha;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto X = gen_symmetric_iid(500, EntryDistribution::gaussian(), 600 + s);
    auto res = spectral_clean(X, K, 1e-4, s);
    CHECK(res.removed.empty());
  }
}

TEST_CASE("expected_opnorm: 1x1 Rademacher is exactly 1") {
  CHECK(expected_opnorm(1, EntryDistribution::rademacher(), 4, 9) == doctest::Approx(1.0));
}

TEST_CASE("expected_opnorm: Wigner edge at n=2000, and K = 5 alpha_hat" * doctest::timeout(300)) {
  double alpha = expected_opnorm(2000, EntryDistribution::gaussian(), 10, 123);
  CHECK(alpha >= 1.9);
  CHECK(alpha <= 2.1);
  double K = 5.0 * alpha;
  CHECK(K == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("CleaningResult: JSON fields") {
  auto Y = gen_symmetric_iid(30, EntryDistribution::gaussian(), 2);
  auto res = spectral_clean(Y, 40.0, 1e-6, 5);
  auto j = to_json(res);
  CHECK(j.find("\"threshold\"") != std::string::npos);
  CHECK(j.find("\"removed\"") != std::string::npos);
  CHECK(j.find("\"norm_trace\"") != std::string::npos);
  CHECK(j.find("\"tol\"") != std::string::npos);
  CHECK(j.find("\"seed\"") != std::string::npos);
}
