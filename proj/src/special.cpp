#include "hierspec/special.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hierspec/errors.hpp"

namespace hierspec {

namespace {

// Modified Lentz evaluation of the Legendre continued fraction; valid for any
// a once x is not small compared with 1 - a.
double upper_gamma_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return std::exp(-x + a * std::log(x)) * h;
  }
  throw CertificationError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double upper_gamma(double a, double x) {
  if (!(x >= 0.0)) throw DomainError("incomplete gamma needs x >= 0");
  if (a > 0.0) {
    if (x == 0.0) return boost::math::tgamma(a);
    return boost::math::tgamma(a, x);
  }
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  const double n_real = std::round(-a);
  if (std::abs(a + n_real) < 1e-12) {
    const auto n = static_cast<unsigned>(n_real);
    return std::pow(x, -n_real) * boost::math::expint(n + 1, x);
  }
  if (x >= 1.0) return upper_gamma_cf(a, x);
  // Gamma(b, x) = (Gamma(b+1, x) - x^b e^-x) / b, stepping b down from a + n.
  const int n = static_cast<int>(std::ceil(-a));
  double b = a + n;
  if (b <= 0.0) {
    b += 1.0;
  }
  double g = boost::math::tgamma(b, x);
  const double ex = std::exp(-x);
  while (b - 1.0 >= a - 1e-12) {
    b -= 1.0;
    g = (g - std::pow(x, b) * ex) / b;
  }
  return g;
}

}  // namespace hierspec
