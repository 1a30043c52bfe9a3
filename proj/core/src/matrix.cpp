#include "ramp/matrix.hpp"

#include <stdexcept>

namespace ramp {

SymmetricMatrix::SymmetricMatrix(int n) {
  if (n < 1) throw std::invalid_argument("SymmetricMatrix: dimension must be >= 1");
  m_ = Eigen::MatrixXd::Zero(n, n);
}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("SymmetricMatrix: matrix must be square, n >= 1");
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (m(i, j) != m(j, i))
        throw std::invalid_argument("SymmetricMatrix: input is not bit-exactly symmetric");
  SymmetricMatrix s(static_cast<int>(m.rows()));
  s.m_ = m;
  return s;
}

SymmetricMatrix SymmetricMatrix::from_upper(int n, const std::vector<double>& upper) {
  if (n < 1) throw std::invalid_argument("SymmetricMatrix: dimension must be >= 1");
  const std::size_t want = static_cast<std::size_t>(n) * (n + 1) / 2;
  if (upper.size() != want)
    throw std::invalid_argument("SymmetricMatrix: upper triangle has wrong length");
  SymmetricMatrix s(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      s.m_(i, j) = upper[k];
      s.m_(j, i) = upper[k];
      ++k;
    }
  return s;
}

void SymmetricMatrix::add_block(const std::vector<int>& support, const Eigen::MatrixXd& block) {
  const int m = static_cast<int>(support.size());
  if (block.rows() != m || block.cols() != m)
    throw std::invalid_argument("add_block: block shape does not match support size");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (block(a, b) != block(b, a))
        throw std::invalid_argument("add_block: block is not symmetric");
  for (int a = 0; a < m; ++a) {
    int i = support[a];
    if (i < 0 || i >= size()) throw std::invalid_argument("add_block: support index out of range");
    for (int b = 0; b < m; ++b) m_(i, support[b]) += block(a, b);
  }
}

void SymmetricMatrix::zero_row_col(int i) {
  if (i < 0 || i >= size()) throw std::invalid_argument("zero_row_col: index out of range");
  m_.row(i).setZero();
  m_.col(i).setZero();
}

std::vector<double> SymmetricMatrix::upper_triangle() const {
  const int n = size();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.push_back(m_(i, j));
  return out;
}

void symv(const SymmetricMatrix& M, const Vector& x, Vector& y) {
  const Eigen::MatrixXd& m = M.dense();
  if (x.size() != m.rows()) throw std::invalid_argument("symv: dimension mismatch");
  const int n = static_cast<int>(m.rows());
  y.resize(n);
  // row i of a symmetric matrix is column i; column access is contiguous
#pragma omp parallel for schedule(static) if (n >= 256)
  for (int i = 0; i < n; ++i) y(i) = m.col(i).dot(x);
}

Vector symv(const SymmetricMatrix& M, const Vector& x) {
  Vector y;
  symv(M, x, y);
  return y;
}

}  // namespace ramp
