#include "ramp/eig.hpp"

#include <cmath>
#include <stdexcept>

#ifdef RAMP_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace ramp {

EigDecomposition dense_sym_eig(const SymmetricMatrix& M, bool with_vectors) {
  const int n = M.size();
  EigDecomposition out;
#ifdef RAMP_HAVE_LAPACKE
  Eigen::MatrixXd A = M.dense();
  Eigen::VectorXd w(n);
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', n, A.data(), n,
                            w.data());
  if (info != 0) throw std::runtime_error("dense_sym_eig: dsyevd failed");
  out.values = std::move(w);
  if (with_vectors) out.vectors = std::move(A);
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(M.dense(), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_sym_eig: solver failed");
  out.values = es.eigenvalues();
  if (with_vectors) out.vectors = es.eigenvectors();
#endif
  return out;
}

double dense_opnorm(const SymmetricMatrix& M) {
  auto eig = dense_sym_eig(M, false);
  return std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
}

}  // namespace ramp
