#include "hierspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hierspec/errors.hpp"
#include "hierspec/parallel.hpp"

namespace hierspec {

LatticeParams::LatticeParams(int nu, double p) : nu_(nu), p_(p) {
  if (nu < 2) throw DomainError("nu must be >= 2");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  s_h_ = 2.0 * std::log(static_cast<double>(nu)) / std::log(1.0 / p);
  alpha_ = 1.0 - s_h_ / 2.0;
}

double LatticeParams::jump_weight(int r) const {
  if (r < 1) throw DomainError("jump rank must be >= 1");
  return (1.0 - p_) * std::pow(p_, r - 1);
}

double LatticeParams::jump_tail(int n) const { return std::pow(p_, n); }

// Site --------------------------------------------------------------------

Site::Site(std::vector<std::uint32_t> digits) : digits_(std::move(digits)) {
  trim();
}

void Site::trim() {
  while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
}

Site Site::from_index(std::uint64_t index, int nu) {
  std::vector<std::uint32_t> d;
  while (index > 0) {
    d.push_back(static_cast<std::uint32_t>(index % static_cast<std::uint64_t>(nu)));
    index /= static_cast<std::uint64_t>(nu);
  }
  return Site(std::move(d));
}

std::optional<std::uint64_t> Site::to_index(int nu) const {
  std::uint64_t v = 0;
  const auto base = static_cast<std::uint64_t>(nu);
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
    if (v > (std::numeric_limits<std::uint64_t>::max() - *it) / base)
      return std::nullopt;
    v = v * base + *it;
  }
  return v;
}

Site Site::with_low_digits(const std::vector<std::uint32_t>& low) const {
  std::vector<std::uint32_t> d = digits_;
  if (d.size() < low.size()) d.resize(low.size(), 0);
  std::copy(low.begin(), low.end(), d.begin());
  return Site(std::move(d));
}

Site Site::shifted(std::size_t k) const {
  if (k >= digits_.size()) return Site();
  return Site(std::vector<std::uint32_t>(digits_.begin() + static_cast<std::ptrdiff_t>(k),
                                         digits_.end()));
}

std::string Site::to_string(int nu) const {
  if (auto idx = to_index(nu)) return std::to_string(*idx);
  // Too large for 64 bits: digit list, most significant first.
  std::string s = "[";
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
    if (it != digits_.rbegin()) s += ' ';
    s += std::to_string(*it);
  }
  return s + "]";
}

std::strong_ordering operator<=>(const Site& a, const Site& b) {
  if (a.digits_.size() != b.digits_.size())
    return a.digits_.size() <=> b.digits_.size();
  for (std::size_t k = a.digits_.size(); k-- > 0;) {
    if (a.digits_[k] != b.digits_[k]) return a.digits_[k] <=> b.digits_[k];
  }
  return std::strong_ordering::equal;
}

// Metric ------------------------------------------------------------------

int hier_distance(const Site& x, const Site& y) {
  const std::size_t n = std::max(x.num_digits(), y.num_digits());
  for (std::size_t k = n; k-- > 0;) {
    if (x.digit(k) != y.digit(k)) return static_cast<int>(k) + 1;
  }
  return 0;
}

int hier_distance(std::uint64_t x, std::uint64_t y, int nu) {
  const auto base = static_cast<std::uint64_t>(nu);
  int d = 0;
  while (x != y) {
    x /= base;
    y /= base;
    ++d;
  }
  return d;
}

double rho_from_distance(int d, const LatticeParams& params) {
  return std::pow(1.0 / std::sqrt(params.p()), d) - 1.0;
}

double rho(const Site& x, const Site& y, const LatticeParams& params) {
  return rho_from_distance(hier_distance(x, y), params);
}

CubeRef cube_of(const Site& x, int r) {
  if (r < 0) throw DomainError("cube rank must be >= 0");
  return CubeRef{r, x.shifted(static_cast<std::size_t>(r))};
}

std::uint64_t int_pow(int nu, int k) {
  if (k < 0) throw DomainError("negative exponent");
  std::uint64_t v = 1;
  const auto base = static_cast<std::uint64_t>(nu);
  for (int i = 0; i < k; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / base)
      throw DomainError("nu^k overflows 64-bit indices");
    v *= base;
  }
  return v;
}

std::ranges::iota_view<std::uint64_t, std::uint64_t> cube_members(
    const CubeRef& cube, int nu) {
  const std::uint64_t width = int_pow(nu, cube.rank);
  const auto j = cube.index.to_index(nu);
  if (!j || (*j != 0 && *j > (std::numeric_limits<std::uint64_t>::max() - width) / width))
    throw DomainError("cube does not fit in 64-bit indices");
  return std::views::iota(*j * width, (*j + 1) * width);
}

// Random walk ---------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

WalkRng::WalkRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double WalkRng::uniform_open() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint32_t WalkRng::below(std::uint32_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return static_cast<std::uint32_t>(v % n);
}

WalkTrajectory sample_walk(const LatticeParams& params, const Site& x0,
                           double horizon, std::uint64_t seed,
                           std::uint64_t stream) {
  if (!(horizon >= 0.0)) throw DomainError("horizon must be >= 0");
  WalkRng rng(seed, stream);
  WalkTrajectory traj;
  traj.steps.push_back({0.0, x0, 0});
  const double log_p = std::log(params.p());
  const auto nu = static_cast<std::uint32_t>(params.nu());
  double t = 0.0;
  std::vector<std::uint32_t> low;
  for (;;) {
    t += -std::log(rng.uniform_open());
    if (t > horizon) break;
    const int rank = 1 + static_cast<int>(std::floor(std::log(rng.uniform_open()) / log_p));
    low.resize(static_cast<std::size_t>(rank));
    for (auto& d : low) d = rng.below(nu);
    traj.steps.push_back({t, traj.steps.back().site.with_low_digits(low), rank});
  }
  return traj;
}

std::vector<WalkTrajectory> sample_walks(const LatticeParams& params,
                                         const Site& x0, double horizon,
                                         std::uint64_t seed,
                                         std::size_t count) {
  std::vector<WalkTrajectory> out(count);
  parallel_for(count, [&](std::size_t i) {
    out[i] = sample_walk(params, x0, horizon, seed, i);
  });
  return out;
}

}  // namespace hierspec
