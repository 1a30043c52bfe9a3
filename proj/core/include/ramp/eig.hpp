#pragma once

#include <Eigen/Dense>

#include "ramp/matrix.hpp"

namespace ramp {

struct EigDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values(k); empty if not requested
};

/// Full symmetric eigendecomposition (LAPACK dsyevd when available, Eigen
/// otherwise). This is the direct factorization route, independent of the
/// power-iteration path in spectra.
EigDecomposition dense_sym_eig(const SymmetricMatrix& M, bool with_vectors = true);

/// Largest-magnitude eigenvalue via the dense route.
double dense_opnorm(const SymmetricMatrix& M);

}  // namespace ramp
