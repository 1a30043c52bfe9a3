#include "ramp/rmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ramp/rng.hpp"

namespace ramp {

SymmetricMatrix gen_symmetric_iid(int n, EntryDistribution dist, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_symmetric_iid: n must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Rng rng(seed);
  SymmetricMatrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = (dist.kind == EntryKind::Gaussian) ? scale * rng.gaussian()
                                                    : scale * static_cast<double>(rng.sign());
      M.set(i, j, v);
    }
  return M;
}

CorruptedInstance corrupt_principal_minor(const SymmetricMatrix& X, std::vector<int> support,
                                          const Eigen::MatrixXd& perturbation,
                                          std::uint64_t seed) {
  const int n = X.size();
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw std::invalid_argument("corrupt_principal_minor: duplicate support index");
  for (int i : support)
    if (i < 0 || i >= n) throw std::invalid_argument("corrupt_principal_minor: support index out of range");

  SymmetricMatrix Y = X;
  Y.add_block(support, perturbation);  // validates shape and symmetry
  double eps = static_cast<double>(support.size()) / n;
  return CorruptedInstance{X, std::move(Y), std::move(support), eps, seed};
}

Eigen::MatrixXd wishart_adversary(int m, int rank, double target_frobenius, std::uint64_t seed) {
  if (m < 1 || rank < 1) throw std::invalid_argument("wishart_adversary: m and rank must be >= 1");
  if (rank > m) throw std::invalid_argument("wishart_adversary: rank must be <= m");
  if (!(target_frobenius > 0)) throw std::invalid_argument("wishart_adversary: target_frobenius must be > 0");

  Rng rng(seed);
  auto sample = [&]() {
    Eigen::MatrixXd G(m, rank);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < rank; ++j) G(i, j) = rng.gaussian();
    Eigen::MatrixXd W = G * G.transpose();
    W = (W + W.transpose()) / 2.0;  // exact symmetry despite float products
    double f = W.norm();
    if (f == 0.0) throw std::runtime_error("wishart_adversary: degenerate zero Wishart sample");
    W *= target_frobenius / f;
    return W;
  };
  Eigen::MatrixXd W1 = sample();
  Eigen::MatrixXd W2 = sample();
  return W1 - W2;
}

SymmetricMatrix restricted(const SymmetricMatrix& Y, const std::vector<int>& removed) {
  SymmetricMatrix out = Y;
  for (int i : removed) out.zero_row_col(i);
  return out;
}

std::vector<int> random_support(int n, double eps, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_support: n must be >= 1");
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("random_support: eps must be in [0,1)");
  const int k = static_cast<int>(std::ceil(eps * n));
  Rng rng(seed);
  // partial Fisher-Yates over [n]
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  std::vector<int> out(idx.begin(), idx.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ramp
