#include "hierspec/hierops.hpp"

#include <algorithm>
#include <cmath>

#include "hierspec/dense.hpp"
#include "hierspec/errors.hpp"
#include "hierspec/lanczos.hpp"

namespace hierspec {

VolumeGrid::VolumeGrid(LatticeParams params_, int depth_, std::size_t dense_cap_)
    : params(params_), depth(depth_), dense_cap(dense_cap_) {
  if (depth < 1) throw DomainError("volume depth must be >= 1");
  const std::uint64_t n = int_pow(params.nu(), depth);
  if (n > kMaxSites) throw DomainError("volume exceeds the supported site count");
  size_ = static_cast<std::size_t>(n);
}

double VolumeGrid::tail_coefficient() const {
  const double nu = params.nu();
  const double p = params.p();
  return (1.0 - p) * std::pow(p, depth) / (std::pow(nu, depth) * (nu - p));
}

double VolumeGrid::bottom_eigenvalue() const {
  const double nu = params.nu();
  const double p = params.p();
  return std::pow(p, depth) * (nu - 1.0) / (nu - p);
}

// Operator application ----------------------------------------------------

namespace {

void check_length(const FieldVector& field, const VolumeGrid& grid) {
  if (static_cast<std::size_t>(field.size()) != grid.size())
    throw DomainError("field length " + std::to_string(field.size()) +
                      " does not match volume size " + std::to_string(grid.size()));
}

/// sums[r][j] = field sum over rank-r cube j, r = 0..N.
std::vector<Eigen::VectorXd> cube_sums(const FieldVector& field, int nu, int depth) {
  std::vector<Eigen::VectorXd> sums(static_cast<std::size_t>(depth) + 1);
  sums[0] = field;
  for (int r = 1; r <= depth; ++r) {
    const auto& below = sums[static_cast<std::size_t>(r) - 1];
    Eigen::VectorXd level(below.size() / nu);
    for (Eigen::Index j = 0; j < level.size(); ++j) {
      double s = 0.0;
      for (int c = 0; c < nu; ++c) s += below(j * nu + c);
      level(j) = s;
    }
    sums[static_cast<std::size_t>(r)] = std::move(level);
  }
  return sums;
}

FieldVector apply_fast(const FieldVector& field, const VolumeGrid& grid) {
  const int nu = grid.params.nu();
  const int depth = grid.depth;
  const auto sums = cube_sums(field, nu, depth);
  const double total = sums.back()(0);
  // acc[j] at rank r: sum over ranks r' >= r of a_r' S_r'/nu^r' plus the tail.
  Eigen::VectorXd acc(1);
  acc(0) = grid.params.jump_weight(depth) * total / std::pow(nu, depth) +
           grid.tail_coefficient() * total;
  for (int r = depth - 1; r >= 1; --r) {
    const auto& s = sums[static_cast<std::size_t>(r)];
    const double w = grid.params.jump_weight(r) / std::pow(nu, r);
    Eigen::VectorXd next(s.size());
    for (Eigen::Index j = 0; j < s.size(); ++j) next(j) = acc(j / nu) + w * s(j);
    acc = std::move(next);
  }
  FieldVector out(field.size());
  for (Eigen::Index x = 0; x < field.size(); ++x) out(x) = acc(x / nu) - field(x);
  return out;
}

FieldVector apply_naive(const FieldVector& field, const VolumeGrid& grid) {
  const int nu = grid.params.nu();
  const int depth = grid.depth;
  const auto n = field.size();
  FieldVector out = FieldVector::Zero(n);
  double total = 0.0;
  for (int r = 1; r <= depth; ++r) {
    const auto width = static_cast<Eigen::Index>(int_pow(nu, r));
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n / width);
    for (Eigen::Index x = 0; x < n; ++x) s(x / width) += field(x);
    const double a = grid.params.jump_weight(r);
    const double inv = 1.0 / static_cast<double>(width);
    for (Eigen::Index x = 0; x < n; ++x) out(x) += a * (s(x / width) * inv - field(x));
    if (r == depth) total = s(0);
  }
  const double tail = grid.tail_coefficient() * total;
  const double leak = grid.params.jump_tail(depth);
  for (Eigen::Index x = 0; x < n; ++x) out(x) += tail - leak * field(x);
  return out;
}

}  // namespace

FieldVector apply_laplacian(const FieldVector& field, const VolumeGrid& grid,
                            ApplyMode mode) {
  check_length(field, grid);
  return mode == ApplyMode::fast ? apply_fast(field, grid) : apply_naive(field, grid);
}

double laplacian_entry(const LatticeParams& params, int d) {
  const double nu = params.nu();
  const double p = params.p();
  if (d == 0) return (1.0 - p) / (nu - p) - 1.0;
  return (1.0 - p) * std::pow(p, d - 1) / (std::pow(nu, d - 1) * (nu - p));
}

Eigen::MatrixXd assemble_dense(const VolumeGrid& grid, const Eigen::VectorXd& potential) {
  const std::size_t n = grid.size();
  if (n > grid.dense_cap)
    throw DomainError("dense assembly of " + std::to_string(n) +
                      " sites exceeds the cap of " + std::to_string(grid.dense_cap));
  if (potential.size() != 0 && static_cast<std::size_t>(potential.size()) != n)
    throw DomainError("potential length does not match the volume");
  const int nu = grid.params.nu();
  std::vector<double> by_distance(static_cast<std::size_t>(grid.depth) + 1);
  for (int d = 0; d <= grid.depth; ++d)
    by_distance[static_cast<std::size_t>(d)] = laplacian_entry(grid.params, d);
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      const int d = hier_distance(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), nu);
      m(i, j) = by_distance[static_cast<std::size_t>(d)];
    }
  }
  if (potential.size() != 0) m.diagonal() += potential;
  return m;
}

// Haar basis ----------------------------------------------------------------

HaarTransform::HaarTransform(const VolumeGrid& grid) : grid_(grid) {
  const int nu = grid.params.nu();
  const int depth = grid.depth;
  const auto n = static_cast<Eigen::Index>(grid.size());
  eigenvalues_.resize(n);
  ranks_.resize(static_cast<std::size_t>(n));
  rank_offset_.assign(static_cast<std::size_t>(depth) + 2, 0);
  std::size_t offset = 0;
  for (int k = 1; k <= depth; ++k) {
    rank_offset_[static_cast<std::size_t>(k)] = offset;
    const std::size_t count = static_cast<std::size_t>(int_pow(nu, depth - k)) *
                              static_cast<std::size_t>(nu - 1);
    const double value = -std::pow(grid.params.p(), k - 1);
    for (std::size_t i = 0; i < count; ++i) {
      eigenvalues_(static_cast<Eigen::Index>(offset + i)) = value;
      ranks_[offset + i] = k;
    }
    offset += count;
  }
  rank_offset_[static_cast<std::size_t>(depth) + 1] = offset;
  eigenvalues_(n - 1) = -grid.bottom_eigenvalue();
  ranks_.back() = depth + 1;
}

FieldVector HaarTransform::forward(const FieldVector& field) const {
  check_length(field, grid_);
  const int nu = grid_.params.nu();
  const int depth = grid_.depth;
  const auto sums = cube_sums(field, nu, depth);
  FieldVector out(field.size());
  for (int k = 1; k <= depth; ++k) {
    const auto& children = sums[static_cast<std::size_t>(k) - 1];
    const double scale = 1.0 / std::sqrt(std::pow(nu, k - 1));
    const std::size_t base = rank_offset_[static_cast<std::size_t>(k)];
    const Eigen::Index cubes = children.size() / nu;
    for (Eigen::Index j = 0; j < cubes; ++j) {
      double prefix = children(j * nu);
      for (int m = 1; m < nu; ++m) {
        const double s = children(j * nu + m);
        const double coef = (prefix - m * s) / std::sqrt(m * (m + 1.0)) * scale;
        out(static_cast<Eigen::Index>(base) + j * (nu - 1) + (m - 1)) = coef;
        prefix += s;
      }
    }
  }
  out(field.size() - 1) = sums.back()(0) / std::sqrt(static_cast<double>(field.size()));
  return out;
}

FieldVector HaarTransform::inverse(const FieldVector& coefficients) const {
  check_length(coefficients, grid_);
  const int nu = grid_.params.nu();
  const int depth = grid_.depth;
  Eigen::VectorXd values(1);
  values(0) = coefficients(coefficients.size() - 1) /
              std::sqrt(static_cast<double>(coefficients.size()));
  std::vector<double> contrast(static_cast<std::size_t>(nu));
  for (int k = depth; k >= 1; --k) {
    const double scale = 1.0 / std::sqrt(std::pow(nu, k - 1));
    const std::size_t base = rank_offset_[static_cast<std::size_t>(k)];
    Eigen::VectorXd next(values.size() * nu);
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      // child c receives sum_{m>c} coef_m/sqrt(m(m+1)) - c coef_c/sqrt(c(c+1)).
      double suffix = 0.0;
      for (int c = nu - 1; c >= 0; --c) {
        double v = suffix;
        if (c >= 1) {
          const double w =
              coefficients(static_cast<Eigen::Index>(base) + j * (nu - 1) + (c - 1)) /
              std::sqrt(c * (c + 1.0));
          v -= c * w;
          suffix += w;
        }
        contrast[static_cast<std::size_t>(c)] = v;
      }
      for (int c = 0; c < nu; ++c)
        next(j * nu + c) = values(j) + contrast[static_cast<std::size_t>(c)] * scale;
    }
    values = std::move(next);
  }
  return values;
}

FieldVector HaarTransform::basis_vector(std::size_t i) const {
  FieldVector e = FieldVector::Zero(static_cast<Eigen::Index>(grid_.size()));
  e(static_cast<Eigen::Index>(i)) = 1.0;
  return inverse(e);
}

FieldVector HaarTransform::apply_function(const FieldVector& field,
                                          const std::function<double(double)>& f) const {
  FieldVector c = forward(field);
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= f(eigenvalues_(i));
  return inverse(c);
}

FieldVector HaarTransform::apply_laplacian(const FieldVector& field) const {
  FieldVector c = forward(field);
  c.array() *= eigenvalues_.array();
  return inverse(c);
}

// Spectra -------------------------------------------------------------------

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed";
    case Provenance::dense: return "dense";
    case Provenance::haar: return "haar";
    case Provenance::iterative: return "iterative";
  }
  return "unknown";
}

SpectrumSummary summarize_spectrum(std::vector<double> values, double tol,
                                   Provenance provenance) {
  std::sort(values.begin(), values.end(), std::greater<>());
  SpectrumSummary out;
  out.provenance = provenance;
  for (double v : values) {
    if (!out.entries.empty() &&
        std::abs(out.entries.back().value - v) <= tol * std::max(1.0, std::abs(v))) {
      ++out.entries.back().multiplicity;
    } else {
      out.entries.push_back({v, 1});
    }
  }
  out.total_multiplicity = values.size();
  return out;
}

SpectrumSummary dirichlet_spectrum(const VolumeGrid& grid) {
  const int nu = grid.params.nu();
  SpectrumSummary out;
  out.provenance = Provenance::closed_form;
  for (int k = 0; k < grid.depth; ++k) {
    out.entries.push_back({std::pow(grid.params.p(), k),
                           int_pow(nu, grid.depth - 1 - k) * static_cast<std::uint64_t>(nu - 1)});
  }
  out.entries.push_back({grid.bottom_eigenvalue(), 1});
  for (const auto& e : out.entries) out.total_multiplicity += e.multiplicity;
  return out;
}

SpectrumSummary dense_spectrum(const VolumeGrid& grid, double tol) {
  const Eigen::VectorXd w = symmetric_eigenvalues(assemble_dense(grid));
  std::vector<double> values(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) values[static_cast<std::size_t>(i)] = -w(i);
  return summarize_spectrum(std::move(values), tol, Provenance::dense);
}

SpectrumSummary haar_spectrum(const VolumeGrid& grid, double tol) {
  const HaarTransform haar(grid);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = -haar.eigenvalues()(static_cast<Eigen::Index>(i));
  return summarize_spectrum(std::move(values), tol, Provenance::haar);
}

SpectrumSummary extreme_spectrum(const VolumeGrid& grid, std::size_t count,
                                 std::uint64_t seed) {
  LanczosOptions options;
  options.seed = seed;
  const auto pairs = lanczos_largest(
      [&](const Eigen::VectorXd& v) { return apply_laplacian(v, grid, ApplyMode::fast); },
      static_cast<Eigen::Index>(grid.size()), count, options);
  std::vector<double> values;
  for (double v : pairs.values) values.push_back(-v);
  auto out = summarize_spectrum(std::move(values), 1e-8, Provenance::iterative);
  out.complete = false;
  return out;
}

double dirichlet_resolvent_kernel(const VolumeGrid& grid, double tau, int d) {
  if (d < 0 || d > grid.depth) throw DomainError("distance outside the volume");
  const double nu = grid.params.nu();
  const double p = grid.params.p();
  auto inv = [](double z) {
    if (std::abs(z) < 1e-300) throw DomainError("tau lies on the spectrum");
    return 1.0 / z;
  };
  double s = std::pow(nu, -grid.depth) * inv(tau + grid.bottom_eigenvalue());
  for (int k = 1; k <= grid.depth; ++k) {
    double weight = 0.0;
    if (k == d) {
      weight = -std::pow(nu, -d);
    } else if (k > d) {
      weight = (1.0 - 1.0 / nu) * std::pow(nu, -(k - 1));
    }
    if (weight != 0.0) s += weight * inv(tau + std::pow(p, k - 1));
  }
  return s;
}

}  // namespace hierspec
