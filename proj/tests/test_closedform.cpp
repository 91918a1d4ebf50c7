#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <complex>

#include "hierspec/closedform.hpp"
#include "hierspec/dense.hpp"
#include "hierspec/errors.hpp"
#include "hierspec/hierops.hpp"
#include "hierspec/special.hpp"

using namespace hierspec;

TEST_CASE("upper incomplete gamma against mpmath") {
  // values frozen from mpmath.gammainc at 30 digits
  const struct {
    double a, x, v;
  } cases[] = {
      {-0.5, 0.3, 1.1503670473551643},  {-0.5, 2.0, 0.030098757100186466},
      {-1.0, 0.5, 0.65328772464910604}, {-1.5, 0.7, 0.33333434409661186},
      {0.5, 3.0, 0.025356509323463443}, {-2.3, 1.7, 0.012169225625749925},
      {-0.999, 0.2, 2.8680953043875032},
  };
  for (const auto& c : cases) CHECK(upper_gamma(c.a, c.x) == doctest::Approx(c.v).epsilon(1e-12));
  CHECK(std::isinf(upper_gamma(-0.5, 0.0)));
}

TEST_CASE("ids is the eigenvalue fraction below lambda") {
  const LatticeParams p(3, 0.4);
  const VolumeGrid g(p, 6);
  const auto ev = symmetric_eigenvalues(-assemble_dense(g));
  for (double l : {0.005, 0.03, 0.1, 0.2, 0.5, 0.9, 1.5}) {
    const double frac = static_cast<double>((ev.array() < l).count()) / static_cast<double>(ev.size());
    CHECK(std::abs(ids(p, l) - frac) <= std::pow(3.0, -6) + 1e-15);
  }
  // scaling profile
  for (double z : {0.2, 1.7, 3.5}) CHECK(ids_profile(p, std::pow(0.4, z)) == doctest::Approx(h_profile(p, z)));
}

TEST_CASE("heat kernel against the N=8 matrix exponential") {
  const LatticeParams p(2, 0.5);
  const VolumeGrid g(p, 8);
  const auto eig = symmetric_eigen(assemble_dense(g));
  for (double t : {0.3, 2.0, 7.0})
    for (int r = 0; r <= 3; ++r) {
      const Eigen::Index y = r == 0 ? 0 : static_cast<Eigen::Index>(int_pow(2, r - 1));
      const auto v = heat_kernel(p, t, r);
      CHECK(std::abs(v.value - expm_entry(eig, t, 0, y)) <= std::pow(0.5, 8) * t + 1e-12);
      CHECK(v.error < 1e-15);
    }
}

TEST_CASE("theta equals the diagonal heat kernel and a frozen value") {
  const LatticeParams p(3, 0.3);
  CHECK(theta(p, 2.5).value == doctest::Approx(0.25408494589395571).epsilon(1e-13));
  CHECK(heat_kernel(p, 2.5, 0).value == doctest::Approx(0.25408494589395571).epsilon(1e-13));
}

TEST_CASE("resolvent is the Laplace transform of the heat kernel") {
  const LatticeParams p(2, 0.35);
  boost::math::quadrature::exp_sinh<double> integrator;
  for (double l : {0.05, 0.7, 3.0})
    for (int r : {0, 2}) {
      const double ref = integrator.integrate(
          [&](double t) { return std::exp(-l * t) * heat_kernel(p, t, r).value; });
      CHECK(resolvent_real(p, l, r) == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("resolvent domain and Green function") {
  const LatticeParams p(4, 0.5);
  CHECK(resolvent_zero(p, 0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(resolvent_real(p, 1e-8, 0) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK_THROWS_AS(resolvent(p, {0.0, 0.0}, 0), DomainError);
  CHECK_THROWS_AS(resolvent(p, {-1.0, 0.1}, 0), DomainError);
  CHECK_THROWS_AS(resolvent_zero(LatticeParams(2, 0.5), 0), DomainError);
  // R_0 at distance r as the lambda -> 0 limit
  for (int r : {1, 3}) CHECK(resolvent_real(p, 1e-10, r) == doctest::Approx(resolvent_zero(p, r)).epsilon(1e-7));
}

TEST_CASE("small-lambda expansion drift stays under its bound") {
  const LatticeParams p(2, 0.25);
  for (double l : {0.3, 0.05, 1e-3}) {
    const auto a = resolvent_expansion(p, l);
    const auto b = resolvent_expansion(p, 0.25 * l);
    CHECK(std::abs(a.u_value - b.u_value) <= a.drift_bound * (1 + 1e-9));
  }
  CHECK_THROWS_AS(resolvent_expansion(LatticeParams(4, 0.5), 0.1), DomainError);
}

TEST_CASE("spectral zeta matches its series and its poles") {
  const LatticeParams p(2, 0.5);
  const std::complex<double> z(-1.3, 0.4);
  const std::complex<double> w = std::pow(std::complex<double>(0.5), z) * 2.0;
  std::complex<double> s = 0.0;
  for (int k = 0; k < 200; ++k) s += std::pow(w, -k);
  CHECK(std::abs(zeta_spectral(p, z) - 0.5 * s) < 1e-12);
  const auto poles = zeta_poles(p, 5);
  CHECK(poles[0].real() == doctest::Approx(p.s_h() / 2));
  CHECK(poles[1].imag() == doctest::Approx(2 * M_PI / std::log(2.0)));
  CHECK(poles[2].imag() == doctest::Approx(-2 * M_PI / std::log(2.0)));
  for (const auto& q : poles) CHECK(std::abs(std::pow(std::complex<double>(0.5), q) * 2.0 - 1.0) < 1e-12);
}

TEST_CASE("green tail integrals against mpmath") {
  // termwise mpmath sums of (1-1/nu) nu^-r p^(r(gamma-1)) Gamma(1-gamma, p^r T)
  const auto a = green_tail_integral(LatticeParams(2, 0.5), 2.0, 0.8);
  CHECK_FALSE(a.divergent);
  CHECK(a.value == doctest::Approx(0.51329160043211938).epsilon(1e-10));
  CHECK(a.error < 1e-10);
  CHECK(green_tail_integral(LatticeParams(4, 0.5), 0.5, 0.0).value ==
        doctest::Approx(1.092309212831548).epsilon(1e-10));
  CHECK(green_tail_integral(LatticeParams(3, 0.7), 1.5, 1.5).value ==
        doctest::Approx(0.10713939826676667).epsilon(1e-10));
  CHECK(green_tail_integral(LatticeParams(4, 0.5), 0.0, 0.0).value == doctest::Approx(1.5));
  CHECK(green_tail_integral(LatticeParams(2, 0.5), 1.0, 0.0).divergent);
  CHECK(green_tail_integral(LatticeParams(2, 0.3), 0.0, 1.0).divergent);
  const auto partial = green_tail_partial_sums(LatticeParams(2, 0.4), 1.0, 30);
  for (std::size_t i = 1; i < partial.size(); ++i) CHECK(partial[i] >= partial[i - 1]);
}
