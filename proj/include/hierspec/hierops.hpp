#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hierspec/lattice.hpp"

namespace hierspec {

/// The rank-N cube Q^(N)(0) = {0, ..., nu^N - 1} with Dirichlet condition
/// outside: fields vanish off the volume, the operator is the restriction of
/// the infinite-lattice Laplacian.
struct VolumeGrid {
  static constexpr std::size_t kDefaultDenseCap = 4096;
  static constexpr std::size_t kMaxSites = std::size_t{1} << 26;

  VolumeGrid(LatticeParams params, int depth,
             std::size_t dense_cap = kDefaultDenseCap);

  LatticeParams params;
  int depth;
  std::size_t dense_cap;

  std::size_t size() const { return size_; }
  /// Value of the infinite-lattice operator's rank > N tail on the volume
  /// sum: (1-p) p^N / (nu^N (nu - p)).
  double tail_coefficient() const;
  /// Eigenvalue of -Laplacian on the constant field: p^N (nu-1)/(nu-p).
  double bottom_eigenvalue() const;

 private:
  std::size_t size_;
};

using FieldVector = Eigen::VectorXd;

enum class ApplyMode { naive, fast };

/// Laplacian applied to a field on the volume. `fast` builds all cube sums by
/// one upward sweep and pushes the weighted averages back down (O(nu^N));
/// `naive` forms each rank's cube sums directly from the field and sums the
/// series site by site (O(nu^N N)).
FieldVector apply_laplacian(const FieldVector& field, const VolumeGrid& grid,
                            ApplyMode mode = ApplyMode::fast);

/// Off-diagonal matrix entry for sites at hierarchical distance d >= 1, and
/// the diagonal entry for d = 0 (without potential).
double laplacian_entry(const LatticeParams& params, int d);

/// Dense symmetric matrix of Laplacian + diag(potential). `potential` may be
/// empty. Throws DomainError above grid.dense_cap.
Eigen::MatrixXd assemble_dense(const VolumeGrid& grid,
                               const Eigen::VectorXd& potential = {});

/// Orthonormal hierarchical (Haar-type) basis in which the Laplacian is
/// diagonal. Coefficients are ordered by rank k = 1..N, then cube index, then
/// the nu-1 Helmert contrasts within the cube; the normalized constant comes
/// last. Both transforms cost O(nu^N).
class HaarTransform {
 public:
  explicit HaarTransform(const VolumeGrid& grid);

  FieldVector forward(const FieldVector& field) const;
  FieldVector inverse(const FieldVector& coefficients) const;

  /// Laplacian eigenvalue of each basis vector: -p^(k-1) for rank-k details,
  /// -p^N (nu-1)/(nu-p) for the constant.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// Rank of each basis vector (N + 1 marks the constant).
  const std::vector<int>& ranks() const { return ranks_; }

  FieldVector basis_vector(std::size_t i) const;

  /// f(Laplacian) applied to a field via the diagonal representation.
  FieldVector apply_function(const FieldVector& field,
                             const std::function<double(double)>& f) const;
  FieldVector apply_laplacian(const FieldVector& field) const;

 private:
  const VolumeGrid grid_;
  Eigen::VectorXd eigenvalues_;
  std::vector<int> ranks_;
  std::vector<std::size_t> rank_offset_;
};

enum class Provenance { closed_form, dense, haar, iterative };
std::string to_string(Provenance p);

struct SpectrumEntry {
  double value = 0.0;
  std::uint64_t multiplicity = 0;
};

/// Eigenvalues of -Laplacian with multiplicities, strictly decreasing.
/// `complete` is false for partial (extreme-eigenvalue) summaries, whose
/// multiplicities need not sum to nu^N.
struct SpectrumSummary {
  std::vector<SpectrumEntry> entries;
  std::uint64_t total_multiplicity = 0;
  Provenance provenance = Provenance::closed_form;
  bool complete = true;
};

/// Clusters eigenvalues of -Laplacian (any order) into a summary; values
/// within `tol` (relative to max(1, |v|)) of the cluster head are merged.
SpectrumSummary summarize_spectrum(std::vector<double> values, double tol,
                                   Provenance provenance);

/// Closed-form spectrum of -Laplacian on the volume: p^k with multiplicity
/// nu^(N-1-k)(nu-1), k = 0..N-1, and the bottom value p^N (nu-1)/(nu-p).
SpectrumSummary dirichlet_spectrum(const VolumeGrid& grid);

/// Dense eigendecomposition of the assembled matrix (subject to the cap).
SpectrumSummary dense_spectrum(const VolumeGrid& grid, double tol = 1e-9);

/// All eigenvalues read off the Haar diagonalization.
SpectrumSummary haar_spectrum(const VolumeGrid& grid, double tol = 1e-12);

/// The `count` smallest eigenvalues of -Laplacian from locked Lanczos with the
/// fast operator; a partial summary.
SpectrumSummary extreme_spectrum(const VolumeGrid& grid, std::size_t count,
                                 std::uint64_t seed = 1);

/// Finite-volume resolvent kernel (tau - Laplacian)^{-1}(x, y) for two sites
/// at hierarchical distance d <= N; tau must avoid minus the spectrum.
double dirichlet_resolvent_kernel(const VolumeGrid& grid, double tau, int d);

}  // namespace hierspec
