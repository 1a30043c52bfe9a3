#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ramp/eig.hpp"
#include "ramp/rmatrix.hpp"
#include "ramp/rng.hpp"
#include "ramp/spectra.hpp"

using namespace ramp;

TEST_CASE("gen_symmetric_iid: n=1 Rademacher is [+-1]") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto M = gen_symmetric_iid(1, EntryDistribution::rademacher(), s);
    CHECK(std::abs(M(0, 0)) == doctest::Approx(1.0));  // scale 1/sqrt(1) = 1
  }
}

TEST_CASE("gen_symmetric_iid: invalid dimension") {
  CHECK_THROWS_AS(gen_symmetric_iid(0, EntryDistribution::gaussian(), 1), std::invalid_argument);
}

TEST_CASE("gen_symmetric_iid: reproducible and symmetric") {
  auto A = gen_symmetric_iid(64, EntryDistribution::gaussian(), 99);
  auto B = gen_symmetric_iid(64, EntryDistribution::gaussian(), 99);
  auto C = gen_symmetric_iid(64, EntryDistribution::gaussian(), 100);
  CHECK(A == B);
  CHECK_FALSE(A == C);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < i; ++j) CHECK(A(i, j) == A(j, i));
}

TEST_CASE("gen_symmetric_iid: n=2000 Gaussian sample moments") {
  const int n = 2000;
  auto M = gen_symmetric_iid(n, EntryDistribution::gaussian(), 7);
  auto upper = M.upper_triangle();
  double mean = 0.0;
  for (double v : upper) mean += v;
  mean /= static_cast<double>(upper.size());
  double var = 0.0;
  for (double v : upper) var += (v - mean) * (v - mean);
  var /= static_cast<double>(upper.size() - 1);

  double mean_tol = 3.0 * (1.0 / std::sqrt(n)) / std::sqrt(n * n / 2.0);
  CHECK(std::abs(mean) <= mean_tol);
  CHECK(var == doctest::Approx(1.0 / n).epsilon(0.05));
}

TEST_CASE("gen_symmetric_iid: n=2000 Gaussian operator norm near the bulk edge" *
          doctest::timeout(300)) {
  // dense symmetric eigensolver oracle on 10 independent samples
  const int n = 2000;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto M = gen_symmetric_iid(n, EntryDistribution::gaussian(), s);
    double nrm = dense_opnorm(M);
    CHECK(nrm >= 1.9);
    CHECK(nrm <= 2.1);
  }
}

TEST_CASE("corrupt_principal_minor: empty support is identity") {
  auto X = gen_symmetric_iid(8, EntryDistribution::gaussian(), 3);
  auto inst = corrupt_principal_minor(X, {}, Eigen::MatrixXd(0, 0));
  CHECK(inst.corrupted == X);
  CHECK(inst.eps == 0.0);
}

TEST_CASE("corrupt_principal_minor: 2x2 block touches only its minor") {
  auto X = gen_symmetric_iid(4, EntryDistribution::gaussian(), 5);
  Eigen::MatrixXd block(2, 2);
  block << 5, 1, 1, 5;
  auto inst = corrupt_principal_minor(X, {0, 1}, block);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double diff = inst.corrupted(i, j) - X(i, j);
      if (i <= 1 && j <= 1)
        CHECK(diff == doctest::Approx(block(i, j)));
      else
        CHECK(diff == 0.0);
    }
}

TEST_CASE("corrupt_principal_minor: difference vanishes off the support") {
  auto X = gen_symmetric_iid(40, EntryDistribution::gaussian(), 11);
  auto support = random_support(40, 0.2, 13);
  auto block = wishart_adversary(static_cast<int>(support.size()), 3, 4.0, 17);
  auto inst = corrupt_principal_minor(X, support, block, 13);
  std::set<int> S(support.begin(), support.end());
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j)
      if (!S.count(i) || !S.count(j)) CHECK(inst.corrupted(i, j) == X(i, j));
  // zeroing the support rows/cols of X and Y yields identical matrices
  CHECK(restricted(inst.clean, support) == restricted(inst.corrupted, support));
}

TEST_CASE("corrupt_principal_minor: argument errors") {
  auto X = gen_symmetric_iid(4, EntryDistribution::gaussian(), 1);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 3, 4;  // asymmetric
  CHECK_THROWS_AS(corrupt_principal_minor(X, {0, 1}, bad), std::invalid_argument);
  Eigen::MatrixXd ok(2, 2);
  ok << 1, 2, 2, 1;
  CHECK_THROWS_AS(corrupt_principal_minor(X, {0, 7}, ok), std::invalid_argument);
  CHECK_THROWS_AS(corrupt_principal_minor(X, {1, 1}, ok), std::invalid_argument);
}

TEST_CASE("wishart_adversary: two 1x1 rank-1 blocks at equal norm cancel") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto W = wishart_adversary(1, 1, 3.0, s);
    CHECK(W(0, 0) == doctest::Approx(0.0).epsilon(0.0));
  }
}

TEST_CASE("wishart_adversary: Frobenius norm bounded by twice the target") {
  auto W = wishart_adversary(60, 50, 100.0, 21);
  CHECK(W.rows() == 60);
  CHECK(W.norm() <= 200.0 + 1e-9);
  CHECK((W - W.transpose()).norm() == 0.0);
}

TEST_CASE("wishart_adversary: rank > m rejected") {
  CHECK_THROWS_AS(wishart_adversary(4, 5, 1.0, 0), std::invalid_argument);
}

TEST_CASE("restricted: edge cases") {
  auto Y = gen_symmetric_iid(3, EntryDistribution::gaussian(), 2);
  CHECK(restricted(Y, {}) == Y);

  auto Z = restricted(Y, {0, 1, 2});
  CHECK(Z.max_abs() == 0.0);

  auto R = restricted(Y, {1});
  for (int i = 0; i < 3; ++i) {
    CHECK(R(1, i) == 0.0);
    CHECK(R(i, 1) == 0.0);
  }
  CHECK(R(0, 0) == Y(0, 0));
  CHECK(R(0, 2) == Y(0, 2));
  CHECK(R(2, 0) == Y(2, 0));
  CHECK(R(2, 2) == Y(2, 2));
}

TEST_CASE("restricted: composition equals union, bit-exact") {
  Rng rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    auto Y = gen_symmetric_iid(20, EntryDistribution::gaussian(), 1000 + trial);
    std::vector<int> A, B;
    for (int i = 0; i < 20; ++i) {
      if (rng.uniform() < 0.2) A.push_back(i);
      if (rng.uniform() < 0.2) B.push_back(i);
    }
    std::vector<int> U = A;
    U.insert(U.end(), B.begin(), B.end());
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());
    CHECK(restricted(restricted(Y, A), B) == restricted(Y, U));
  }
}

TEST_CASE("principal minor operator norm never exceeds the full matrix") {
  Rng rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    auto Y = gen_symmetric_iid(50, EntryDistribution::gaussian(), 2000 + trial);
    std::vector<int> removed;
    for (int i = 0; i < 50; ++i)
      if (rng.uniform() < 0.3) removed.push_back(i);
    auto minor = restricted(Y, removed);
    double full = top_eigpair(Y, 1e-9, 20000, 1).value;
    double part = top_eigpair(minor, 1e-9, 20000, 1).value;
    CHECK(part <= full + 1e-6 * full + 1e-12);
  }
}

TEST_CASE("random_support: size and determinism") {
  auto s1 = random_support(100, 0.05, 9);
  auto s2 = random_support(100, 0.05, 9);
  CHECK(s1 == s2);
  CHECK(s1.size() == 5);
  CHECK(std::is_sorted(s1.begin(), s1.end()));
  CHECK(random_support(100, 0.0, 9).empty());
  // ceil: eps*n = 4.9 -> 5
  CHECK(random_support(70, 0.07, 9).size() == 5);
}
