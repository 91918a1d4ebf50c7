#pragma once

#include <complex>
#include <string>

#include "hierspec/lattice.hpp"

namespace hierspec {

/// R~_lambda(x0, x) = R_lambda(x0, x) - R_lambda(x0, x0) for d_h(x0, x) = r >= 1.
/// A finite sum; lambda = 0 is allowed.
std::complex<double> resolvent_tilde(const LatticeParams& params,
                                     std::complex<double> lambda, int r);

/// Diagonal resolvent of the walk annihilated at x0, at a site x with
/// d_h(x0, x) = r >= 1: -2 R~ - R~^2 / R_lambda(x0, x0).
std::complex<double> resolvent_annihilated(const LatticeParams& params,
                                           std::complex<double> lambda, int r);

/// a(r) = lambda -> 0 limit of the annihilated resolvent, equal to the total
/// occupation time integral_0^inf p1(t, x, x) dt. The R~^2/R_0 term vanishes
/// when p nu <= 1.
double annihilated_limit(const LatticeParams& params, int r);

/// resolvent_annihilated(lambda) - a(r), evaluated without cancellation.
std::complex<double> annihilated_shift(const LatticeParams& params,
                                       std::complex<double> lambda, int r);

struct KernelValue {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  /// "contour", "dense" or "closed".
  std::string method;
};

/// Annihilated transition probability p1(t, x, x), d_h(x0, x) = r >= 1.
/// t >= 1: inverse Laplace transform along the rays arg lambda = +-3pi/4.
/// t < 1: matrix exponential of the x0-deleted dense operator on a volume of
/// at most 1024 sites (error <= p^N t).
KernelValue p1_diag(const LatticeParams& params, double t, int r);

/// integral_T^inf p1(t, x, x) dt.
KernelValue p1_tail_integral(const LatticeParams& params, double T, int r);

/// integral_T^inf t^-gamma p1(t, x, x) dt for gamma > 0. At T = 0 this needs
/// gamma < 1 and is computed from the Laplace-side identity
/// Gamma(gamma)^-1 integral_0^inf lambda^(gamma-1) R1_lambda d lambda.
KernelValue p1_moment(const LatticeParams& params, double T, double gamma, int r);

/// t^(1+alpha) p1(t, x, x) / (rho^2 + 1)^(2 alpha).
double p1_envelope_ratio(const LatticeParams& params, double t, int r);

}  // namespace hierspec
