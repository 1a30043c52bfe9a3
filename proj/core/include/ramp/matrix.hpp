#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ramp {

using Vector = Eigen::VectorXd;

/// Dense real symmetric n x n matrix. Symmetry is bit-exact: construction
/// validates (or mirrors) and every mutator touches (i,j) and (j,i) together.
class SymmetricMatrix {
 public:
  /// Zero matrix of dimension n. Throws std::invalid_argument if n < 1.
  explicit SymmetricMatrix(int n);

  /// Wraps a dense matrix, requiring m(i,j) == m(j,i) bit-exactly.
  static SymmetricMatrix from_dense(const Eigen::MatrixXd& m);

  /// Builds from the upper triangle (row-major, n(n+1)/2 values), mirroring
  /// the lower triangle.
  static SymmetricMatrix from_upper(int n, const std::vector<double>& upper);

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }

  /// Sets entries (i,j) and (j,i).
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  /// Adds a symmetric block over the given (sorted or unsorted) indices.
  void add_block(const std::vector<int>& support, const Eigen::MatrixXd& block);

  /// Zeroes row i and column i.
  void zero_row_col(int i);

  const Eigen::MatrixXd& dense() const { return m_; }

  /// Upper triangle, row-major, including the diagonal.
  std::vector<double> upper_triangle() const;

  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  bool operator==(const SymmetricMatrix& o) const { return m_ == o.m_; }

 private:
  Eigen::MatrixXd m_;
};

/// y = M x with a fixed per-row reduction order; parallelized over rows, so
/// the result is identical for any thread count.
void symv(const SymmetricMatrix& M, const Vector& x, Vector& y);
Vector symv(const SymmetricMatrix& M, const Vector& x);

}  // namespace ramp
