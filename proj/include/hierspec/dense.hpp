#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hierspec {

/// Eigenvalues (ascending) of a symmetric matrix; LAPACK two-stage reduction.
Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd matrix);

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

/// Full eigendecomposition of a symmetric matrix (LAPACK divide and conquer).
SymmetricEigen symmetric_eigen(Eigen::MatrixXd matrix);

/// Copy of `m` without row and column k.
Eigen::MatrixXd delete_row_col(const Eigen::MatrixXd& m, Eigen::Index k);

/// exp(t M)(i, j) from a decomposition of M.
double expm_entry(const SymmetricEigen& eig, double t, Eigen::Index i,
                  Eigen::Index j);

/// (lambda - M)^{-1}(i, j) from a decomposition of M.
std::complex<double> resolvent_entry(const SymmetricEigen& eig,
                                     std::complex<double> lambda,
                                     Eigen::Index i, Eigen::Index j);

}  // namespace hierspec
