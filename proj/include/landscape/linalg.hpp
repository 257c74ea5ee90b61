#pragma once

#include <vector>

#include "landscape/matrix.hpp"

namespace landscape::linalg {

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a small symmetric matrix.
/// Each eigenvector is sign-fixed so its largest-magnitude entry is positive;
/// equal eigenvalues are ordered by the index of that entry.
/// Throws NumericalFailure on non-convergence or non-finite input.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Modified Gram-Schmidt on the columns of a square matrix.
Matrix gram_schmidt(const Matrix& a);

Matrix multiply(const Matrix& a, const Matrix& b);

/// Uncentered second moment XᵀX / n.
Matrix second_moment(const Matrix& x);

/// Sample covariance (n - 1 denominator) of the columns of x.
Matrix covariance(const Matrix& x);

}  // namespace landscape::linalg
