#include "hierspec/dense.hpp"

#include <lapacke.h>

#include <string>

#include "hierspec/errors.hpp"

namespace hierspec {

Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd matrix) {
  const auto n = static_cast<lapack_int>(matrix.rows());
  Eigen::VectorXd w(n);
  if (n == 0) return w;
  const lapack_int info = LAPACKE_dsyevd_2stage(LAPACK_COL_MAJOR, 'N', 'L', n,
                                                matrix.data(), n, w.data());
  if (info != 0)
    throw CertificationError("dsyevd_2stage failed, info=" + std::to_string(info));
  return w;
}

SymmetricEigen symmetric_eigen(Eigen::MatrixXd matrix) {
  const auto n = static_cast<lapack_int>(matrix.rows());
  SymmetricEigen out;
  out.values.resize(n);
  if (n > 0) {
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                           matrix.data(), n, out.values.data());
    if (info != 0)
      throw CertificationError("dsyevd failed, info=" + std::to_string(info));
  }
  out.vectors = std::move(matrix);
  return out;
}

Eigen::MatrixXd delete_row_col(const Eigen::MatrixXd& m, Eigen::Index k) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd out(n - 1, n - 1);
  for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
    if (j == k) continue;
    for (Eigen::Index i = 0, ii = 0; i < n; ++i) {
      if (i == k) continue;
      out(ii++, jj) = m(i, j);
    }
    ++jj;
  }
  return out;
}

double expm_entry(const SymmetricEigen& eig, double t, Eigen::Index i,
                  Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    s += eig.vectors(i, k) * eig.vectors(j, k) * std::exp(t * eig.values(k));
  return s;
}

std::complex<double> resolvent_entry(const SymmetricEigen& eig,
                                     std::complex<double> lambda,
                                     Eigen::Index i, Eigen::Index j) {
  std::complex<double> s = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    s += eig.vectors(i, k) * eig.vectors(j, k) / (lambda - eig.values(k));
  return s;
}

}  // namespace hierspec
