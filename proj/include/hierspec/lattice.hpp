#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <ranges>
#include <string>
#include <vector>

namespace hierspec {

/// The pair (nu, p) of the hierarchical model and the constants derived from
/// it. Every other module takes its parameters from here.
class LatticeParams {
 public:
  /// Throws DomainError unless nu >= 2 and 0 < p < 1.
  LatticeParams(int nu, double p);

  int nu() const { return nu_; }
  double p() const { return p_; }
  /// Spectral dimension 2 ln(nu) / ln(1/p).
  double s_h() const { return s_h_; }
  /// 1 - s_h/2.
  double alpha() const { return alpha_; }
  /// p * nu; > 1 exactly in the transient regime.
  double p_nu() const { return p_ * nu_; }

  /// Jump weight a_r = (1-p) p^(r-1), r >= 1.
  double jump_weight(int r) const;
  /// Sum of a_r over r > n, i.e. p^n.
  double jump_tail(int n) const;

 private:
  int nu_;
  double p_;
  double s_h_;
  double alpha_;
};

/// A lattice point: base-nu digits, least significant first, with no trailing
/// zeros stored. The digit vector is unbounded so a walk can leave any finite
/// volume.
class Site {
 public:
  Site() = default;
  explicit Site(std::vector<std::uint32_t> digits);

  static Site from_index(std::uint64_t index, int nu);

  /// Digit at position k (zero beyond the stored length).
  std::uint32_t digit(std::size_t k) const {
    return k < digits_.size() ? digits_[k] : 0U;
  }
  std::size_t num_digits() const { return digits_.size(); }
  const std::vector<std::uint32_t>& digits() const { return digits_; }

  /// Integer index, if it fits in 64 bits.
  std::optional<std::uint64_t> to_index(int nu) const;

  /// Replaces digits [0, k) with `low` (low.size() == k).
  Site with_low_digits(const std::vector<std::uint32_t>& low) const;

  /// Drops the k lowest digits (integer quotient by nu^k).
  Site shifted(std::size_t k) const;

  std::string to_string(int nu) const;

  friend bool operator==(const Site&, const Site&) = default;
  friend std::strong_ordering operator<=>(const Site& a, const Site& b);

 private:
  void trim();
  std::vector<std::uint32_t> digits_;
};

/// The rank-r cube Q_index^(r): all sites whose digits at positions >= r
/// encode `index`.
struct CubeRef {
  int rank = 0;
  Site index;

  friend bool operator==(const CubeRef&, const CubeRef&) = default;
};

/// Hierarchical distance: 0 if x == y, otherwise 1 + the position of the most
/// significant differing digit.
int hier_distance(const Site& x, const Site& y);
/// Same, for sites given by 64-bit indices.
int hier_distance(std::uint64_t x, std::uint64_t y, int nu);

/// rho = (1/sqrt p)^d - 1 for hierarchical distance d.
double rho_from_distance(int d, const LatticeParams& params);
double rho(const Site& x, const Site& y, const LatticeParams& params);

CubeRef cube_of(const Site& x, int r);

/// Member indices of a cube, in increasing order. Throws DomainError if the
/// cube does not fit in 64-bit indices.
std::ranges::iota_view<std::uint64_t, std::uint64_t> cube_members(
    const CubeRef& cube, int nu);

/// nu^k as an unsigned integer; throws DomainError on overflow.
std::uint64_t int_pow(int nu, int k);

// Random walk ------------------------------------------------------------

/// Seedable generator for the walk sampler. Streams for independent samples
/// are derived from (seed, stream) by SplitMix64 mixing, so per-sample
/// results do not depend on scheduling.
class WalkRng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/splitmix64-stream";

  WalkRng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform in (0, 1).
  double uniform_open();
  /// Uniform integer in [0, n).
  std::uint32_t below(std::uint32_t n);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct WalkStep {
  double time = 0.0;
  Site site;
  /// Rank of the cube chosen for this jump (0 for the initial entry).
  int rank = 0;
};

struct WalkTrajectory {
  std::vector<WalkStep> steps;
  const Site& end() const { return steps.back().site; }
};

/// Continuous-time hierarchical walk on [0, horizon]: unit-rate exponential
/// holding times, jump rank r with probability a_r, landing uniform on the
/// rank-r cube around the current site.
WalkTrajectory sample_walk(const LatticeParams& params, const Site& x0,
                           double horizon, std::uint64_t seed,
                           std::uint64_t stream = 0);

/// `count` independent trajectories with streams 0..count-1; runs on the
/// worker pool.
std::vector<WalkTrajectory> sample_walks(const LatticeParams& params,
                                         const Site& x0, double horizon,
                                         std::uint64_t seed,
                                         std::size_t count);

}  // namespace hierspec
