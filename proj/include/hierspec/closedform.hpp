#pragma once

#include <complex>
#include <vector>

#include "hierspec/lattice.hpp"

namespace hierspec {

/// A series value with a certified bound on |value - exact| (tail plus a
/// rounding allowance).
struct SeriesValue {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexSeriesValue {
  std::complex<double> value;
  double error = 0.0;
};

/// Integrated density of states: nu^-k0(lambda) with k0 = min{k >= 0 : p^k < lambda}.
double ids(const LatticeParams& params, double lambda);
/// ids(lambda) * lambda^(-s_h/2).
double ids_profile(const LatticeParams& params, double lambda);
/// Scaling profile h(z) = nu^({z} - 1); ids_profile(p^z) = h(z).
double h_profile(const LatticeParams& params, double z);

/// Transition probability p(t, x, y) for sites at hierarchical distance r.
SeriesValue heat_kernel(const LatticeParams& params, double t, int r);
/// t^(s_h/2) p(t, x, x).
double heat_profile(const LatticeParams& params, double t);

/// Resolvent kernel R_lambda(x, y) = integral of e^{-lambda t} p(t, x, y),
/// for lambda in the sector |arg lambda| <= 3pi/4, lambda != 0.
ComplexSeriesValue resolvent(const LatticeParams& params, std::complex<double> lambda,
                             int r);
inline double resolvent_real(const LatticeParams& params, double lambda, int r) {
  return resolvent(params, {lambda, 0.0}, r).value.real();
}

/// Green function R_0(x, y) at distance r >= 0; needs p nu > 1.
double resolvent_zero(const LatticeParams& params, int r);

struct ResolventExpansion {
  double c0 = 0.0;
  /// lambda^alpha (R_lambda(x,x) - c0).
  double u_value = 0.0;
  /// Bound on |u(lambda) - u(p lambda)|: p^2 (nu-1) lambda^(1+alpha).
  double drift_bound = 0.0;
};
/// Small-lambda splitting of the diagonal resolvent; needs s_h < 2 and 0 < lambda < 1.
ResolventExpansion resolvent_expansion(const LatticeParams& params, double lambda);

/// theta(t) = (1 - 1/nu) sum_r e^{-p^r t} nu^-r.
SeriesValue theta(const LatticeParams& params, double t);
/// Spectral zeta function (1 - 1/nu) w / (w - 1), w = p^z nu.
std::complex<double> zeta_spectral(const LatticeParams& params, std::complex<double> z);
/// Poles s_h/2 + 2 pi i k / ln(1/p) in the order k = 0, 1, -1, 2, -2, ...
std::vector<std::complex<double>> zeta_poles(const LatticeParams& params, int count);

struct TailIntegral {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  int terms = 0;
};

/// integral_T^inf t^-gamma p(t, x, x) dt, summed termwise over the spectral
/// atoms with upper incomplete gamma functions.
TailIntegral green_tail_integral(const LatticeParams& params, double T, double gamma);

/// The first `count` partial sums of the gamma = 0 series at lower limit T.
std::vector<double> green_tail_partial_sums(const LatticeParams& params, double T,
                                            int count);

}  // namespace hierspec
