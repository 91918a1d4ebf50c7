#include "hierspec/closedform.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hierspec/errors.hpp"
#include "hierspec/special.hpp"

namespace hierspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 5000;

}  // namespace

double ids(const LatticeParams& params, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("ids needs lambda > 0");
  if (lambda > 1.0) return 1.0;
  int k = 0;
  while (!(std::pow(params.p(), k) < lambda)) ++k;
  return std::pow(params.nu(), -k);
}

double ids_profile(const LatticeParams& params, double lambda) {
  return ids(params, lambda) * std::pow(lambda, -params.s_h() / 2.0);
}

double h_profile(const LatticeParams& params, double z) {
  return std::pow(params.nu(), z - std::floor(z) - 1.0);
}

SeriesValue heat_kernel(const LatticeParams& params, double t, int r) {
  if (!(t >= 0.0)) throw DomainError("heat kernel needs t >= 0");
  if (r < 0) throw DomainError("distance must be >= 0");
  const double nu = params.nu();
  const double p = params.p();
  const double w = 1.0 - 1.0 / nu;
  double sum = 0.0;
  double magnitude = 0.0;
  if (r >= 1) {
    sum = -std::exp(-std::pow(p, r - 1) * t) * std::pow(nu, -r);
    magnitude = std::abs(sum);
  }
  // Remaining terms are bounded by w nu^-s each, so the tail from s is nu^-s.
  double tail = 0.0;
  for (int s = r; s < r + kMaxTerms; ++s) {
    const double scale = std::pow(nu, -s);
    const double term = w * std::exp(-std::pow(p, s) * t) * scale;
    sum += term;
    magnitude += term;
    tail = scale / nu;
    if (tail <= std::max(1e-3 * kEps * std::abs(sum), std::numeric_limits<double>::min())) break;
  }
  SeriesValue out;
  out.value = std::clamp(sum, 0.0, 1.0);
  out.error = tail + 4.0 * kEps * magnitude;
  return out;
}

double heat_profile(const LatticeParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("heat profile needs t > 0");
  return std::pow(t, params.s_h() / 2.0) * heat_kernel(params, t, 0).value;
}

namespace {

void check_resolvent_point(const LatticeParams& params, std::complex<double> lambda) {
  if (lambda == std::complex<double>(0.0)) throw DomainError("lambda = 0 is not in the resolvent set");
  if (std::abs(std::arg(lambda)) > 0.75 * std::numbers::pi + 1e-12)
    throw DomainError("lambda outside the sector |arg lambda| <= 3pi/4");
  if (lambda.real() < 0.0) {
    const double k = std::round(std::log(-lambda.real()) / std::log(params.p()));
    for (double j = std::max(0.0, k - 1.0); j <= std::max(0.0, k + 1.0); j += 1.0) {
      const double pj = std::pow(params.p(), j);
      if (std::abs(lambda + pj) < 1e-13 * std::min(1.0, pj))
        throw DomainError("lambda lies on the spectrum");
    }
  }
}

}  // namespace

ComplexSeriesValue resolvent(const LatticeParams& params, std::complex<double> lambda,
                             int r) {
  if (r < 0) throw DomainError("distance must be >= 0");
  check_resolvent_point(params, lambda);
  const double nu = params.nu();
  const double p = params.p();
  const double w = 1.0 - 1.0 / nu;
  const double mod = std::abs(lambda);
  std::complex<double> sum = 0.0;
  double magnitude = 0.0;
  if (r >= 1) {
    sum = -1.0 / ((lambda + std::pow(p, r - 1)) * std::pow(nu, r));
    magnitude = std::abs(sum);
  }
  // In the sector |lambda + q| >= max(|lambda|, q)/sqrt(2) for q > 0.
  double tail = std::numeric_limits<double>::infinity();
  double ps = std::pow(p, r);
  double scale = std::pow(nu, -r);
  for (int s = r; s < r + kMaxTerms; ++s, ps *= p, scale /= nu) {
    const std::complex<double> term = w * scale / (lambda + ps);
    sum += term;
    magnitude += std::abs(term);
    tail = std::numbers::sqrt2 * scale / nu / mod;
    if (p * nu > 1.0)
      tail = std::min(tail, std::numbers::sqrt2 * w * (scale / nu) / (ps * p) /
                                (1.0 - 1.0 / (p * nu)));
    if (tail <= std::max(1e-3 * kEps * std::abs(sum), 1e-21)) break;
  }
  if (!(tail <= 1e-14 * std::max(1.0, std::abs(sum))))
    throw CertificationError("resolvent series tail not certified");
  return {sum, tail + 4.0 * kEps * magnitude};
}

double resolvent_zero(const LatticeParams& params, int r) {
  if (r < 0) throw DomainError("distance must be >= 0");
  const double pn = params.p_nu();
  if (!(pn > 1.0))
    throw DomainError("p nu <= 1: the walk is recurrent and R_0 is infinite");
  const double p = params.p();
  if (r == 0) return p * (params.nu() - 1.0) / (pn - 1.0);
  return (1.0 - p) / (std::pow(pn, r - 1) * (pn - 1.0));
}

ResolventExpansion resolvent_expansion(const LatticeParams& params, double lambda) {
  if (!(params.s_h() < 2.0)) throw DomainError("resolvent expansion needs s_h < 2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("expansion needs 0 < lambda < 1");
  const double p = params.p();
  const double nu = params.nu();
  const double alpha = params.alpha();
  ResolventExpansion out;
  out.c0 = p * (nu - 1.0) / (params.p_nu() - 1.0);
  out.u_value = std::pow(lambda, alpha) * (resolvent_real(params, lambda, 0) - out.c0);
  out.drift_bound = p * p * (nu - 1.0) * std::pow(lambda, 1.0 + alpha);
  return out;
}

SeriesValue theta(const LatticeParams& params, double t) { return heat_kernel(params, t, 0); }

std::complex<double> zeta_spectral(const LatticeParams& params, std::complex<double> z) {
  const std::complex<double> w = std::exp(z * std::log(params.p())) * double(params.nu());
  if (std::abs(w - 1.0) < 1e-13) throw DomainError("z is at a pole of the zeta function");
  return (1.0 - 1.0 / params.nu()) * w / (w - 1.0);
}

std::vector<std::complex<double>> zeta_poles(const LatticeParams& params, int count) {
  std::vector<std::complex<double>> out;
  const double spacing = 2.0 * std::numbers::pi / std::log(1.0 / params.p());
  for (int i = 0; i < count; ++i) {
    const int k = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
    out.emplace_back(params.s_h() / 2.0, spacing * k);
  }
  return out;
}

namespace {

// Bound on sum_{s >= S} (1 - 1/nu) nu^-s (p^s)^(gamma-1) Gamma(1-gamma, p^s T).
double green_tail_bound(const LatticeParams& params, double T, double gamma, int S) {
  const double nu = params.nu();
  const double p = params.p();
  const double w = 1.0 - 1.0 / nu;
  if (gamma < 1.0) {
    // Gamma(1-gamma, x) <= Gamma(1-gamma): geometric with ratio 1/q.
    const double q = nu * std::pow(p, 1.0 - gamma);
    return w * std::tgamma(1.0 - gamma) * std::pow(q, -S) / (1.0 - 1.0 / q);
  }
  const double geo = std::pow(nu, -S) / w;  // sum_{s>=S} nu^-s / (1 - 1/nu)
  if (gamma == 1.0) {
    // E_1(x) <= ln(1 + 1/x) <= ln(1 + 1/T) + s ln(1/p).
    const double a = std::log1p(1.0 / T);
    const double b = std::log(1.0 / p);
    const double mean_s = S + (1.0 / nu) / w;  // sum s nu^-s / sum nu^-s over s >= S
    return w * geo * (a + b * mean_s);
  }
  // Gamma(1-gamma, x) <= x^(1-gamma)/(gamma-1).
  return w * geo * std::pow(T, 1.0 - gamma) / (gamma - 1.0);
}

}  // namespace

TailIntegral green_tail_integral(const LatticeParams& params, double T, double gamma) {
  if (!(T >= 0.0)) throw DomainError("tail integral needs T >= 0");
  if (!(gamma >= 0.0)) throw DomainError("tail integral needs gamma >= 0");
  TailIntegral out;
  const double nu = params.nu();
  const double p = params.p();
  const double w = 1.0 - 1.0 / nu;
  const double q = nu * std::pow(p, 1.0 - gamma);
  if ((gamma < 1.0 && !(q > 1.0)) || (T == 0.0 && gamma >= 1.0)) {
    out.divergent = true;
    out.value = std::numeric_limits<double>::infinity();
    out.error = 0.0;
    return out;
  }
  double sum = 0.0;
  double magnitude = 0.0;
  double tail = 0.0;
  int s = 0;
  for (; s < kMaxTerms; ++s) {
    const double ps = std::pow(p, s);
    double term;
    if (gamma == 0.0) {
      term = w * std::pow(p * nu, -s) * std::exp(-ps * T);
    } else {
      term = w * std::pow(nu, -s) * std::pow(ps, gamma - 1.0) * upper_gamma(1.0 - gamma, ps * T);
    }
    sum += term;
    magnitude += std::abs(term);
    tail = green_tail_bound(params, T, gamma, s + 1);
    if (tail <= 1e-3 * kEps * sum) break;
  }
  out.terms = s + 1;
  if (!(tail <= 1e-12 * std::max(sum, 1e-300)))
    throw CertificationError("tail integral series not certified");
  out.value = sum;
  out.error = tail + 1e-14 * magnitude;
  return out;
}

std::vector<double> green_tail_partial_sums(const LatticeParams& params, double T,
                                            int count) {
  const double nu = params.nu();
  const double p = params.p();
  std::vector<double> out;
  double sum = 0.0;
  for (int s = 0; s < count; ++s) {
    sum += (1.0 - 1.0 / nu) * std::pow(p * nu, -s) * std::exp(-std::pow(p, s) * T);
    out.push_back(sum);
  }
  return out;
}

}  // namespace hierspec
