#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hierspec/hierops.hpp"

namespace hierspec {

/// Finitely supported potential V >= 0, keyed by site index, with a marked
/// origin x0 used by the distance-weighted families and bounds.
struct Potential {
  std::map<std::uint64_t, double> values;
  std::uint64_t origin = 0;

  /// Throws DomainError on a negative or non-finite value.
  void set(std::uint64_t site, double value);
  double at(std::uint64_t site) const;
  bool empty() const { return values.empty(); }
  /// Dense vector over the volume; throws DomainError if the support leaves it.
  Eigen::VectorXd on_grid(const VolumeGrid& grid) const;
  Potential scaled(double factor) const;
};

/// JSON form {"sites": [[index, value], ...], "origin": index}; values may be
/// numbers or decimal strings.
Potential parse_potential(const std::string& json_text);
std::string dump_potential(const Potential& v);
Potential load_potential(const std::string& path);

/// V(x) = theta (1 + rho(x0, x))^-beta on the rank-`radius` cube around x0.
Potential powerlaw_potential(const VolumeGrid& grid, std::uint64_t x0, double theta,
                             double beta, int radius);

struct SpectrumOptions {
  double threshold = 1e-12;
  /// Use Lanczos on the fast operator even when the dense path fits.
  bool iterative = false;
  std::uint64_t seed = 1;
  /// Residuals are reconstructed for at most this many eigenvalues.
  std::size_t max_residuals = 8;
};

struct EigenReport {
  /// Eigenvalues of H = Laplacian + V above the threshold, descending, repeated
  /// by multiplicity.
  std::vector<double> eigenvalues;
  std::size_t count = 0;
  std::vector<std::pair<double, double>> sums;  // (gamma, S_gamma)
  std::string method;
  int depth = 0;
  double threshold = 0.0;
  /// ||H psi - lambda psi|| / ||psi|| for the leading eigenvalues, with psi
  /// rebuilt from the Birman-Schwinger kernel.
  std::vector<double> residuals;
  /// Number of eigenvalues of the Birman-Schwinger kernel at the threshold
  /// exceeding 1; always equals `count`.
  std::size_t inertia_count = 0;

  /// Largest eigenvalue of H if positive, else 0.
  double largest_positive() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  double sum(double gamma) const;
};

/// Birman-Schwinger count: #{eigenvalues of H exceeding tau} for tau > 0,
/// from the support-sized kernel V^1/2 (tau - Laplacian)^-1 V^1/2.
std::size_t count_above(const VolumeGrid& grid, const Potential& v, double tau);

EigenReport positive_spectrum(const VolumeGrid& grid, const Potential& v,
                              const SpectrumOptions& options = {});

EigenReport count_and_sums(const VolumeGrid& grid, const Potential& v,
                           const std::vector<double>& gammas,
                           const SpectrumOptions& options = {});

}  // namespace hierspec
