#include "hierspec/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hierspec/errors.hpp"

namespace hierspec {

namespace {

void project_out(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) v -= q.dot(v) * q;
}

}  // namespace

EigenPairs lanczos_largest(const LinearOperator& op, Eigen::Index n,
                           std::size_t count, const LanczosOptions& options) {
  EigenPairs out;
  if (count == 0) return out;
  if (static_cast<Eigen::Index>(count) > n)
    throw CertificationError("requested more eigenpairs than the dimension");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  const std::size_t m_max =
      std::min<std::size_t>(options.max_basis, static_cast<std::size_t>(n));

  while (out.values.size() < count) {
    Eigen::VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) start(i) = normal(rng);
    project_out(start, out.vectors);
    start.normalize();

    bool locked = false;
    for (std::size_t restart = 0; restart <= options.max_restarts && !locked; ++restart) {
      std::vector<Eigen::VectorXd> basis{start};
      std::vector<double> alpha;
      std::vector<double> beta;
      basis.reserve(m_max + 1);
      for (std::size_t j = 0; j < m_max; ++j) {
        Eigen::VectorXd w = op(basis[j]);
        ++out.matvecs;
        project_out(w, out.vectors);
        alpha.push_back(basis[j].dot(w));
        project_out(w, basis);
        // again: near breakdown the remainder is tiny and the locked
        // directions creep back in relative terms
        project_out(w, out.vectors);
        const double b = w.norm();
        if (b <= 1e-13 * std::max(1.0, std::abs(alpha.back()))) break;
        if (j + 1 == m_max) break;
        beta.push_back(b);
        basis.push_back(w / b);
      }
      const auto k = static_cast<Eigen::Index>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
      for (Eigen::Index i = 0; i < k; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
      const double theta = tri.eigenvalues()(k - 1);
      const Eigen::VectorXd y = tri.eigenvectors().col(k - 1);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < k; ++i) x += y(i) * basis[static_cast<std::size_t>(i)];
      project_out(x, out.vectors);
      x.normalize();
      const Eigen::VectorXd ax = op(x);
      ++out.matvecs;
      const double residual = (ax - theta * x).norm();
      if (residual <= options.tol * std::max(1.0, std::abs(theta))) {
        out.values.push_back(theta);
        out.vectors.push_back(std::move(x));
        out.residuals.push_back(residual);
        locked = true;
      } else {
        start = std::move(x);
      }
    }
    if (!locked)
      throw CertificationError("Lanczos did not converge for eigenpair " +
                               std::to_string(out.values.size() + 1));
  }
  // Deflation returns values in nonincreasing order up to roundoff; enforce it.
  std::vector<std::size_t> order(out.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.values[a] > out.values[b]; });
  EigenPairs sorted;
  sorted.matvecs = out.matvecs;
  for (auto i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.vectors.push_back(std::move(out.vectors[i]));
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

}  // namespace hierspec
