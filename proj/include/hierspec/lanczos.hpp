#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace hierspec {

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LanczosOptions {
  std::size_t max_basis = 120;
  std::size_t max_restarts = 400;
  /// Converged when ||A x - theta x|| <= tol * max(1, |theta|).
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

struct EigenPairs {
  std::vector<double> values;  // descending
  std::vector<Eigen::VectorXd> vectors;
  std::vector<double> residuals;
  std::size_t matvecs = 0;
};

/// The `count` largest eigenpairs of a symmetric operator of size n. Lanczos
/// with full reorthogonalization; converged vectors are locked and deflated,
/// so repeated eigenvalues are returned with their multiplicity. Restarts
/// from the current best Ritz vector. Throws CertificationError when a pair
/// fails to converge within the restart budget.
EigenPairs lanczos_largest(const LinearOperator& op, Eigen::Index n,
                           std::size_t count, const LanczosOptions& options = {});

}  // namespace hierspec
