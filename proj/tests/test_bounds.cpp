#include <doctest.h>

#include "hierspec/bounds.hpp"
#include "hierspec/closedform.hpp"

using namespace hierspec;

TEST_CASE("clr functional in the transient regime") {
  const LatticeParams p(4, 0.5);
  const VolumeGrid g(p, 4);
  const Potential v = powerlaw_potential(g, 0, 1.5, 3.0, 3);
  const auto rep = positive_spectrum(g, v);
  const auto b = clr_functional(g, v, 1.0, 0.0, rep);
  double above = 0.0, weighted = 0.0;
  for (const auto& [x, val] : v.values) {
    (void)x;
    if (val > 1.0) above += 1.0;
    else weighted += val * resolvent_zero(p, 0);
  }
  CHECK(b.leading == doctest::Approx(above));
  CHECK(b.weighted == doctest::Approx(weighted).epsilon(1e-9));
  CHECK(b.functional == doctest::Approx(b.leading + b.weighted));
  REQUIRE(b.fitted_constant.has_value());
  CHECK(*b.fitted_constant == doctest::Approx(static_cast<double>(rep.count) / b.functional));
  CHECK(rep.count <= b.functional);
}

TEST_CASE("recurrent forms are flagged divergent") {
  const VolumeGrid g(LatticeParams(2, 0.5), 4);
  const Potential v = powerlaw_potential(g, 0, 0.5, 3.0, 3);
  const auto rep = positive_spectrum(g, v);
  const auto b = clr_functional(g, v, 1.0, 0.0, rep);
  CHECK(b.divergent());
  CHECK_FALSE(b.fitted_constant.has_value());
  CHECK(b.flags.find("recurrent") != std::string::npos);
  // the annihilated form stays finite
  const auto c = clr_general_functional(g, v, 1.0, 0.0, rep);
  CHECK_FALSE(c.divergent());
  CHECK(rep.count <= c.functional);
}

TEST_CASE("bargmann family depends on the spectral dimension") {
  const VolumeGrid low(LatticeParams(2, 0.25), 5);
  const VolumeGrid high(LatticeParams(4, 0.5), 3);
  const auto f = [](const VolumeGrid& g) {
    const Potential v = powerlaw_potential(g, 0, 0.8, 3.0, g.depth);
    return bargmann_functionals(g, v, positive_spectrum(g, v));
  };
  CHECK(f(low).size() == 3);
  const auto h = f(high);
  REQUIRE(h.size() == 1);
  CHECK(h[0].theorem == tag::kBargmannUniform);
}

TEST_CASE("sweep rows are ordered and serialize") {
  const VolumeGrid g(LatticeParams(2, 0.25), 5);
  SweepConfig cfg;
  cfg.thetas = {0.1, 0.4, 1.6};
  const auto res = bound_report(g, cfg);
  REQUIRE(!res.rows.empty());
  for (std::size_t i = 1; i < res.rows.size(); ++i) CHECK(res.rows[i - 1].theorem <= res.rows[i].theorem);
  for (const auto& r : res.rows) {
    if (!r.divergent()) {
      CHECK(r.functional == doctest::Approx(r.leading + r.weighted));
      REQUIRE(r.fitted_constant.has_value());
      CHECK(std::isfinite(*r.fitted_constant));
    }
  }
  CHECK(bounds_csv_header() == "theorem,a,sigma,gamma,theta,beta,functional,actual,fitted_constant,flags");
  BoundReport r;
  r.theorem = "clr";
  r.functional = INFINITY;
  const std::string row = to_csv_row(r);
  CHECK(row.find(",inf,") != std::string::npos);
  CHECK(row.rfind("clr,,", 0) == 0);
  CHECK(bounds_json({r}).find("null") != std::string::npos);
}
