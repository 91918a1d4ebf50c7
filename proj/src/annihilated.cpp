#include "hierspec/annihilated.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hierspec/closedform.hpp"
#include "hierspec/dense.hpp"
#include "hierspec/errors.hpp"
#include "hierspec/hierops.hpp"
#include "hierspec/special.hpp"

namespace hierspec {

namespace {

using cd = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

constexpr double kTheta = 0.75 * std::numbers::pi;
constexpr double kVMax = 80.0;
constexpr double kVMin = 1e-14;

void check_r(int r) {
  if (r < 1) throw DomainError("annihilated kernels need r = d_h(x0, x) >= 1");
}

// -lambda / (q (lambda + q)) = 1/(lambda + q) - 1/q.
cd shifted_inverse(cd lambda, double q) { return -lambda / (q * (lambda + q)); }

double tilde_zero(const LatticeParams& params, int r) {
  const double nu = params.nu();
  const double p = params.p();
  double s = -1.0 / (std::pow(p, r - 1) * std::pow(nu, r));
  for (int k = 0; k < r; ++k) s -= (1.0 - 1.0 / nu) / (std::pow(p, k) * std::pow(nu, k));
  return s;
}

cd tilde_shift(const LatticeParams& params, cd lambda, int r) {
  const double nu = params.nu();
  const double p = params.p();
  cd s = -shifted_inverse(lambda, std::pow(p, r - 1)) / std::pow(nu, r);
  for (int k = 0; k < r; ++k)
    s -= (1.0 - 1.0 / nu) * shifted_inverse(lambda, std::pow(p, k)) / std::pow(nu, k);
  return s;
}

// R_lambda(x, x) - R_0(x, x) for p nu > 1, summed termwise.
cd diagonal_shift(const LatticeParams& params, cd lambda) {
  const double nu = params.nu();
  const double p = params.p();
  const double w = 1.0 - 1.0 / nu;
  const double pn = p * nu;
  cd sum = 0.0;
  double ps = 1.0;
  double scale = 1.0;
  for (int s = 0; s < 100000; ++s, ps *= p, scale /= nu) {
    sum += w * shifted_inverse(lambda, ps) * scale;
    // |lambda/(lambda+q)| <= sqrt(2) in the sector.
    const double tail = std::numbers::sqrt2 * w * (scale / nu) / (ps * p) / (1.0 - 1.0 / pn);
    if (tail <= std::max(1e-17 * std::abs(sum), 1e-300)) return sum;
  }
  throw CertificationError("resolvent difference series not certified");
}

// Dense oracle for the walk killed at x0 = 0: eigendecomposition of the
// Dirichlet operator with row and column 0 removed.
struct DeletedOracle {
  int depth = 0;
  SymmetricEigen eig;
};

std::shared_ptr<const DeletedOracle> deleted_oracle(const LatticeParams& params, int r) {
  int depth = 1;
  while (int_pow(params.nu(), depth + 1) <= 1024) ++depth;
  depth = std::max(depth, r);
  if (int_pow(params.nu(), depth) > VolumeGrid::kDefaultDenseCap)
    throw DomainError("small-t oracle volume exceeds the dense cap");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, int>, std::shared_ptr<const DeletedOracle>> cache;
  const auto key = std::make_tuple(params.nu(), params.p(), depth);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto oracle = std::make_shared<DeletedOracle>();
  oracle->depth = depth;
  const VolumeGrid grid(params, depth);
  oracle->eig = symmetric_eigen(delete_row_col(assemble_dense(grid), 0));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(oracle)).first->second;
}

Eigen::Index deleted_index(const LatticeParams& params, int r) {
  return static_cast<Eigen::Index>(int_pow(params.nu(), r - 1)) - 1;
}

// Weight v_k(x)^2 and rate mu_k = -lambda_k of each deleted-operator mode.
template <typename F>
double oracle_sum(const DeletedOracle& oracle, Eigen::Index i, F f) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < oracle.eig.values.size(); ++k) {
    const double v = oracle.eig.vectors(i, k);
    s += v * v * f(-oracle.eig.values(k));
  }
  return s;
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// Integral over v in (0, inf) of f(v): one 31-point Kronrod rule per dyadic
// panel down to kVMin, with the embedded Gauss rule as error estimate.
template <typename F>
Integral dyadic_integral(F f) {
  Integral out;
  double hi = kVMax;
  while (hi > kVMin) {
    const double lo = hi / 2.0;
    double err = 0.0;
    out.value += gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &err);
    out.error += err;
    hi = lo;
  }
  return out;
}

// Decay exponent of p1(t) for large t.
double p1_decay(const LatticeParams& params) {
  const double s_h = params.s_h();
  return s_h < 2.0 ? 2.0 - s_h / 2.0 : std::min(2.0, s_h / 2.0);
}

// Heuristic bound for the piece of the contour integral below kVMin, from the
// size of the shift at the cut and its power-law order.
double near_origin_bound(const LatticeParams& params, double shift_at_cut, bool over_v) {
  const double order = std::clamp(std::abs(params.alpha()), 0.1, 1.0);
  const double factor = over_v ? 2.0 / order : 2.0 * kVMin;
  return shift_at_cut * factor;
}

KernelValue contour_p1(const LatticeParams& params, double t, int r) {
  const cd e = std::polar(1.0, kTheta);
  auto f = [&](double v) {
    return std::imag(e * std::exp(v * e) * annihilated_shift(params, v * e / t, r));
  };
  const Integral I = dyadic_integral(f);
  const double A = annihilated_limit(params, r);
  const double far = std::numbers::sqrt2 * std::exp(-kVMax / std::numbers::sqrt2) *
                     (std::numbers::sqrt2 * t / kVMax + std::abs(A));
  const double near =
      near_origin_bound(params, std::abs(annihilated_shift(params, kVMin * e / t, r)), false);
  KernelValue out;
  out.method = "contour";
  out.value = I.value / (std::numbers::pi * t);
  out.error = (I.error + far + near) / (std::numbers::pi * t);
  if (!(out.error <= 1e-6 * std::abs(out.value) + 1e-13))
    throw CertificationError("contour quadrature for p1 not certified");
  out.value = std::clamp(out.value, 0.0, 1.0);
  return out;
}

KernelValue contour_tail(const LatticeParams& params, double T, int r) {
  const cd e = std::polar(1.0, kTheta);
  auto f = [&](double v) {
    return std::imag(std::exp(v * e) * annihilated_shift(params, v * e / T, r)) / v;
  };
  const Integral I = dyadic_integral(f);
  const double A = annihilated_limit(params, r);
  const double far = std::numbers::sqrt2 * std::exp(-kVMax / std::numbers::sqrt2) *
                     (std::numbers::sqrt2 * T / kVMax + std::abs(A)) / kVMax;
  const double near =
      near_origin_bound(params, std::abs(annihilated_shift(params, kVMin * e / T, r)), true);
  KernelValue out;
  out.method = "contour";
  out.value = std::max(0.0, -I.value / std::numbers::pi);
  out.error = (I.error + far + near) / std::numbers::pi;
  if (!(out.error <= 1e-6 * std::abs(out.value) + 1e-12))
    throw CertificationError("contour quadrature for the p1 tail integral not certified at T = " +
                             std::to_string(T));
  return out;
}

// integral over t in [lo, hi] of t^-gamma p1(t) by Gauss-Kronrod in ln t.
Integral time_panel(const LatticeParams& params, double gamma, int r, double lo, double hi) {
  auto f = [&](double s) {
    const double t = std::exp(s);
    return std::pow(t, 1.0 - gamma) * contour_p1(params, t, r).value;
  };
  Integral out;
  out.value = gauss_kronrod<double, 15>::integrate(f, std::log(lo), std::log(hi), 3, 1e-8,
                                                   &out.error);
  return out;
}

constexpr int kPanelsPerDecade = 4;
constexpr int kPanelCount = 8 * kPanelsPerDecade;  // t in [1, 1e8]

double panel_edge(int k) { return std::pow(10.0, static_cast<double>(k) / kPanelsPerDecade); }

// Cached integral of t^-gamma p1 over the fixed panel [edge(k), edge(k+1)].
Integral cached_panel(const LatticeParams& params, double gamma, int r, int k) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double, int, int>, Integral> cache;
  const auto key = std::make_tuple(params.nu(), params.p(), gamma, r, k);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Integral v = time_panel(params, gamma, r, panel_edge(k), panel_edge(k + 1));
  std::lock_guard lock(mutex);
  cache[key] = v;
  return v;
}

// integral_lo^inf t^-gamma p1(t) dt for lo >= 1.
Integral moment_from(const LatticeParams& params, double lo, double gamma, int r) {
  Integral out;
  int k = 0;
  while (k < kPanelCount && panel_edge(k + 1) <= lo) ++k;
  double t_end = std::max(lo, panel_edge(kPanelCount));
  if (k < kPanelCount) {
    const Integral first = time_panel(params, gamma, r, lo, panel_edge(k + 1));
    out.value += first.value;
    out.error += first.error;
    for (int j = k + 1; j < kPanelCount; ++j) {
      const Integral panel = cached_panel(params, gamma, r, j);
      out.value += panel.value;
      out.error += panel.error;
    }
  }
  // Power-law tail beyond t_end.
  const double kappa = p1_decay(params);
  const double tail = contour_p1(params, t_end, r).value * std::pow(t_end, 1.0 - gamma) /
                      (gamma + kappa - 1.0);
  out.value += tail;
  out.error += 0.5 * tail;
  return out;
}

// Laplace-side moment at T = 0, 0 < gamma < 1.
KernelValue moment_at_zero(const LatticeParams& params, double gamma, int r) {
  auto R1 = [&](double lambda) { return resolvent_annihilated(params, {lambda, 0.0}, r).real(); };
  auto f = [&](double s) {
    const double lambda = std::exp(s);
    return std::pow(lambda, gamma) * R1(lambda);
  };
  const double s_lo = std::log(1e-12);
  const double s_hi = std::log(1e12);
  Integral I;
  for (double s = s_lo; s < s_hi; s += 1.0) {
    double err = 0.0;
    I.value += gauss_kronrod<double, 31>::integrate(f, s, std::min(s + 1.0, s_hi), 6, 1e-11, &err);
    I.error += err;
  }
  const double A = annihilated_limit(params, r);
  const double lmin = std::exp(s_lo);
  const double lmax = std::exp(s_hi);
  // R1 is decreasing on the positive axis, so R1(lmin) <= R1 <= A below lmin.
  const double r_min = R1(lmin);
  const double low = 0.5 * (A + r_min) * std::pow(lmin, gamma) / gamma;
  const double low_err = 0.5 * (A - r_min) * std::pow(lmin, gamma) / gamma;
  // R1 = 1/lambda + d/lambda^2 + ... above lmax.
  const double d = lmax * (lmax * R1(lmax) - 1.0);
  const double high = std::pow(lmax, gamma - 1.0) / (1.0 - gamma) +
                      d * std::pow(lmax, gamma - 2.0) / (2.0 - gamma);
  const double high_err = std::abs(d) * std::pow(lmax, gamma - 2.0);
  KernelValue out;
  out.method = "closed";
  const double g = std::tgamma(gamma);
  out.value = (I.value + low + high) / g;
  out.error = (I.error + low_err + high_err) / g;
  return out;
}

}  // namespace

std::complex<double> resolvent_tilde(const LatticeParams& params, std::complex<double> lambda,
                                     int r) {
  check_r(r);
  if (lambda == cd(0.0)) return tilde_zero(params, r);
  const double nu = params.nu();
  const double p = params.p();
  for (int k = 0; k < r; ++k)
    if (std::abs(lambda + std::pow(p, k)) < 1e-13 * std::min(1.0, std::pow(p, k))) throw DomainError("lambda lies on the spectrum");
  cd s = -1.0 / ((lambda + std::pow(p, r - 1)) * std::pow(nu, r));
  for (int k = 0; k < r; ++k) s -= (1.0 - 1.0 / nu) / ((lambda + std::pow(p, k)) * std::pow(nu, k));
  return s;
}

std::complex<double> resolvent_annihilated(const LatticeParams& params,
                                           std::complex<double> lambda, int r) {
  check_r(r);
  if (lambda == cd(0.0)) return annihilated_limit(params, r);
  const cd tilde = resolvent_tilde(params, lambda, r);
  const cd R = resolvent(params, lambda, 0).value;
  return -2.0 * tilde - tilde * tilde / R;
}

double annihilated_limit(const LatticeParams& params, int r) {
  check_r(r);
  const double t0 = tilde_zero(params, r);
  double a = -2.0 * t0;
  if (params.p_nu() > 1.0) a -= t0 * t0 / resolvent_zero(params, 0);
  return a;
}

std::complex<double> annihilated_shift(const LatticeParams& params, std::complex<double> lambda,
                                       int r) {
  check_r(r);
  const double t0 = tilde_zero(params, r);
  const cd dt = tilde_shift(params, lambda, r);
  const cd R = resolvent(params, lambda, 0).value;
  if (!(params.p_nu() > 1.0)) return -2.0 * dt - (t0 + dt) * (t0 + dt) / R;
  const double R0 = resolvent_zero(params, 0);
  const cd dR = diagonal_shift(params, lambda);
  return -2.0 * dt - (R0 * dt * (2.0 * t0 + dt) - t0 * t0 * dR) / (R * R0);
}

KernelValue p1_diag(const LatticeParams& params, double t, int r) {
  check_r(r);
  if (!(t >= 0.0)) throw DomainError("p1 needs t >= 0");
  if (t >= 1.0) return contour_p1(params, t, r);
  const auto oracle = deleted_oracle(params, r);
  const Eigen::Index i = deleted_index(params, r);
  KernelValue out;
  out.method = "dense";
  out.value = std::clamp(oracle_sum(*oracle, i, [&](double mu) { return std::exp(-mu * t); }),
                         0.0, 1.0);
  out.error = std::pow(params.p(), oracle->depth) * t + 1e-14;
  return out;
}

KernelValue p1_tail_integral(const LatticeParams& params, double T, int r) {
  check_r(r);
  if (!(T >= 0.0)) throw DomainError("tail integral needs T >= 0");
  if (T == 0.0) return {annihilated_limit(params, r), 1e-15 * annihilated_limit(params, r), false, "closed"};
  if (T >= 1.0) return contour_tail(params, T, r);
  const auto oracle = deleted_oracle(params, r);
  const Eigen::Index i = deleted_index(params, r);
  const double head = oracle_sum(*oracle, i, [&](double mu) { return -std::expm1(-mu * T) / mu; });
  KernelValue out;
  out.method = "dense";
  out.value = annihilated_limit(params, r) - head;
  out.error = std::pow(params.p(), oracle->depth) * T * T / 2.0 + 1e-13;
  return out;
}

KernelValue p1_moment(const LatticeParams& params, double T, double gamma, int r) {
  check_r(r);
  if (!(T >= 0.0)) throw DomainError("moment needs T >= 0");
  if (!(gamma > 0.0)) throw DomainError("moment needs gamma > 0");
  if (T == 0.0) {
    if (gamma >= 1.0) {
      KernelValue out;
      out.divergent = true;
      out.value = std::numeric_limits<double>::infinity();
      out.method = "closed";
      return out;
    }
    return moment_at_zero(params, gamma, r);
  }
  KernelValue out;
  out.method = "contour";
  if (T < 1.0) {
    const auto oracle = deleted_oracle(params, r);
    const Eigen::Index i = deleted_index(params, r);
    // integral_T^1 t^-gamma e^{-mu t} dt = mu^(gamma-1) (Gamma(1-gamma, mu T) - Gamma(1-gamma, mu)).
    out.value += oracle_sum(*oracle, i, [&](double mu) {
      return std::pow(mu, gamma - 1.0) *
             (upper_gamma(1.0 - gamma, mu * T) - upper_gamma(1.0 - gamma, mu));
    });
    const double pN = std::pow(params.p(), oracle->depth);
    out.error += gamma == 2.0 ? pN * -std::log(T)
                              : pN * (1.0 - std::pow(T, 2.0 - gamma)) / (2.0 - gamma);
  }
  const Integral rest = moment_from(params, std::max(T, 1.0), gamma, r);
  out.value += rest.value;
  out.error += rest.error;
  return out;
}

double p1_envelope_ratio(const LatticeParams& params, double t, int r) {
  const double alpha = params.alpha();
  const double rho = rho_from_distance(r, params);
  return std::pow(t, 1.0 + alpha) * p1_diag(params, t, r).value /
         std::pow(rho * rho + 1.0, 2.0 * alpha);
}

}  // namespace hierspec
