#include "hierspec/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include <json.hpp>

#include "hierspec/annihilated.hpp"
#include "hierspec/closedform.hpp"
#include "hierspec/errors.hpp"
#include "hierspec/parallel.hpp"

namespace hierspec {

bool BoundReport::divergent() const { return flags.find("divergent") != std::string::npos; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void add_flag(BoundReport& r, const std::string& flag) {
  if (r.flags.find(flag) != std::string::npos) return;
  if (!r.flags.empty()) r.flags += ";";
  r.flags += flag;
}

void finish(BoundReport& r, double actual) {
  r.actual = actual;
  r.functional = r.leading + r.weighted;
  if (std::isinf(r.functional)) add_flag(r, "divergent");
  if (std::isfinite(r.functional) && r.functional > 0.0) r.fitted_constant = actual / r.functional;
}

int distance_to_origin(const VolumeGrid& grid, const Potential& v, std::uint64_t x) {
  return hier_distance(v.origin, x, grid.params.nu());
}

// Memoized green_tail_integral over the lower limits that occur in one sum.
class GreenTail {
 public:
  GreenTail(const LatticeParams& params, double gamma) : params_(params), gamma_(gamma) {}
  double operator()(double T) {
    auto it = memo_.find(T);
    if (it == memo_.end()) {
      const auto v = green_tail_integral(params_, T, gamma_);
      it = memo_.emplace(T, v.divergent ? kInf : v.value).first;
    }
    return it->second;
  }

 private:
  LatticeParams params_;
  double gamma_;
  std::map<double, double> memo_;
};

// Memoized annihilated integrals keyed by (r, T).
class AnnihilatedTail {
 public:
  AnnihilatedTail(const LatticeParams& params, std::optional<double> gamma)
      : params_(params), gamma_(gamma) {}
  double operator()(int r, double T) {
    const auto key = std::make_pair(r, T);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      const KernelValue v =
          gamma_ ? p1_moment(params_, T, *gamma_, r) : p1_tail_integral(params_, T, r);
      it = memo_.emplace(key, v.divergent ? kInf : v.value).first;
    }
    return it->second;
  }

 private:
  LatticeParams params_;
  std::optional<double> gamma_;
  std::map<std::pair<int, double>, double> memo_;
};

}  // namespace

BoundReport clr_functional(const VolumeGrid& grid, const Potential& v, double a, double sigma,
                           const EigenReport& actual) {
  if (!(a > 0.0) || !(sigma >= 0.0)) throw DomainError("need a > 0 and sigma >= 0");
  BoundReport r;
  r.theorem = tag::kClr;
  r.a = a;
  r.sigma = sigma;
  if (!(grid.params.p_nu() > 1.0)) add_flag(r, "recurrent");
  GreenTail tail(grid.params, 0.0);
  for (const auto& [x, value] : v.values) {
    if (value > a) {
      r.leading += 1.0;
    } else {
      r.weighted += value * tail(sigma / value);
    }
  }
  finish(r, static_cast<double>(actual.count));
  return r;
}

std::vector<BoundReport> lt_functionals(const VolumeGrid& grid, const Potential& v,
                                        double gamma, double sigma, const EigenReport& actual) {
  if (!(gamma > 0.0) || !(sigma >= 0.0)) throw DomainError("need gamma > 0 and sigma >= 0");
  const double s_gamma = actual.sum(gamma);
  const double lambda_term = std::pow(actual.largest_positive(), gamma);
  const double prefactor = 2.0 * gamma * std::tgamma(gamma);
  const bool recurrent = !(grid.params.p_nu() > 1.0);
  std::vector<BoundReport> out;

  BoundReport lt;
  lt.theorem = tag::kLt;
  if (recurrent) add_flag(lt, "recurrent");
  BoundReport moment;
  moment.theorem = tag::kLtMoment;
  BoundReport ann;
  ann.theorem = tag::kLtAnnihilated;
  ann.leading = lambda_term;
  BoundReport ann_moment;
  ann_moment.theorem = tag::kLtAnnihilatedMoment;
  ann_moment.leading = lambda_term;

  GreenTail tail0(grid.params, 0.0);
  GreenTail tail_gamma(grid.params, gamma);
  AnnihilatedTail p1_tail(grid.params, std::nullopt);
  AnnihilatedTail p1_mom(grid.params, gamma);
  for (const auto& [x, value] : v.values) {
    const double T = sigma / value;
    lt.weighted += std::pow(value, 1.0 + gamma) * tail0(T);
    moment.weighted += prefactor * value * tail_gamma(T);
    const int r = distance_to_origin(grid, v, x);
    if (r == 0) continue;  // p1(t, x0, x0) = 0
    ann.weighted += std::pow(value, 1.0 + gamma) * p1_tail(r, T);
    ann_moment.weighted += prefactor * value * p1_mom(r, T);
  }
  for (BoundReport* r : {&lt, &moment, &ann, &ann_moment}) {
    r->sigma = sigma;
    r->gamma = gamma;
    finish(*r, s_gamma);
    out.push_back(*r);
  }
  return out;
}

BoundReport clr_general_functional(const VolumeGrid& grid, const Potential& v, double a,
                                   double sigma, const EigenReport& actual) {
  if (!(a > 0.0) || !(sigma >= 0.0)) throw DomainError("need a > 0 and sigma >= 0");
  BoundReport r;
  r.theorem = tag::kClrAnnihilated;
  r.a = a;
  r.sigma = sigma;
  r.leading = 1.0;
  AnnihilatedTail tail(grid.params, std::nullopt);
  for (const auto& [x, value] : v.values) {
    if (value > a) {
      r.leading += 1.0;
      continue;
    }
    const int d = distance_to_origin(grid, v, x);
    if (d > 0) r.weighted += value * tail(d, sigma / value);
  }
  finish(r, static_cast<double>(actual.count));
  return r;
}

std::vector<BoundReport> bargmann_functionals(const VolumeGrid& grid, const Potential& v,
                                              const EigenReport& actual) {
  const double s_h = grid.params.s_h();
  const double p = grid.params.p();
  const bool critical = std::abs(s_h - 2.0) < 1e-12;
  double leading = 1.0;
  double classic = 0.0;
  double uniform = 0.0;
  double refined = 0.0;
  for (const auto& [x, value] : v.values) {
    if (value >= 1.0) {
      leading += 1.0;
      continue;
    }
    const double rho = rho_from_distance(distance_to_origin(grid, v, x), grid.params);
    if (s_h < 2.0) {
      // rho = 0 at the origin: the weight rho^(2 - s_h) is 0 there.
      classic += rho > 0.0 ? value * std::pow(rho, 2.0 - s_h) : 0.0;
      refined += std::pow(value, 2.0 - s_h / 2.0) * std::pow(1.0 + rho * rho, 2.0 - s_h);
    }
    if (critical) {
      uniform += value * std::log1p(rho) / std::log(1.0 / std::sqrt(p));
    } else {
      uniform += value * (std::pow(1.0 + rho, 2.0 - s_h) - 1.0) /
                 (std::pow(1.0 / std::sqrt(p), 2.0 - s_h) - 1.0);
    }
  }
  std::vector<BoundReport> out;
  auto make = [&](const char* name, double weighted) {
    BoundReport r;
    r.theorem = name;
    r.leading = leading;
    r.weighted = weighted;
    finish(r, static_cast<double>(actual.count));
    out.push_back(r);
  };
  if (s_h < 2.0) make(tag::kBargmannClassic, classic);
  make(tag::kBargmannUniform, uniform);
  if (s_h < 2.0) make(tag::kBargmannRefined, refined);
  return out;
}

namespace {

bool selected(const SweepConfig& c, const std::string& name) {
  return c.theorems.empty() ||
         std::find(c.theorems.begin(), c.theorems.end(), name) != c.theorems.end();
}

// NaN sorts first.
bool less_param(double a, double b) {
  if (std::isnan(a)) return !std::isnan(b);
  if (std::isnan(b)) return false;
  return a < b;
}

bool row_less(const BoundReport& x, const BoundReport& y) {
  if (x.theorem != y.theorem) return x.theorem < y.theorem;
  const double xs[] = {x.a, x.sigma, x.gamma, x.theta, x.beta};
  const double ys[] = {y.a, y.sigma, y.gamma, y.theta, y.beta};
  for (int i = 0; i < 5; ++i) {
    if (less_param(xs[i], ys[i])) return true;
    if (less_param(ys[i], xs[i])) return false;
  }
  return false;
}

bool same_param(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

SweepResult bound_report(const VolumeGrid& grid, const SweepConfig& config) {
  const int radius = config.radius > 0 ? config.radius : grid.depth;
  std::vector<std::vector<BoundReport>> per_theta(config.thetas.size());
  parallel_for(config.thetas.size(), [&](std::size_t i) {
    const double theta = config.thetas[i];
    const Potential v = powerlaw_potential(grid, config.origin, theta, config.beta, radius);
    const EigenReport er = count_and_sums(grid, v, config.gammas, config.spectrum);
    auto& rows = per_theta[i];
    for (double sigma : config.sigmas) {
      if (selected(config, tag::kClr)) rows.push_back(clr_functional(grid, v, config.a, sigma, er));
      if (selected(config, tag::kClrAnnihilated))
        rows.push_back(clr_general_functional(grid, v, config.a, sigma, er));
      for (double gamma : config.gammas) {
        for (auto& r : lt_functionals(grid, v, gamma, sigma, er))
          if (selected(config, r.theorem)) rows.push_back(r);
      }
    }
    for (auto& r : bargmann_functionals(grid, v, er))
      if (selected(config, r.theorem)) rows.push_back(r);
    for (auto& r : rows) {
      r.theta = theta;
      r.beta = config.beta;
    }
  });
  SweepResult result;
  for (auto& rows : per_theta)
    for (auto& r : rows) result.rows.push_back(std::move(r));
  std::stable_sort(result.rows.begin(), result.rows.end(), row_less);

  for (const auto& r : result.rows) {
    auto it = std::find_if(result.summaries.begin(), result.summaries.end(), [&](const SweepSummary& s) {
      return s.theorem == r.theorem && same_param(s.sigma, r.sigma) && same_param(s.gamma, r.gamma);
    });
    if (it == result.summaries.end()) {
      SweepSummary s;
      s.theorem = r.theorem;
      s.sigma = r.sigma;
      s.gamma = r.gamma;
      s.min_fitted = kInf;
      result.summaries.push_back(s);
      it = result.summaries.end() - 1;
    }
    if (r.fitted_constant) {
      it->max_fitted = std::max(it->max_fitted, *r.fitted_constant);
      it->min_fitted = std::min(it->min_fitted, *r.fitted_constant);
      ++it->rows;
    }
  }
  return result;
}

std::string bounds_csv_header() {
  return "theorem,a,sigma,gamma,theta,beta,functional,actual,fitted_constant,flags";
}

namespace {

std::string csv_number(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // shortest form that round-trips
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string to_csv_row(const BoundReport& r) {
  std::string row = r.theorem;
  for (double x : {r.a, r.sigma, r.gamma, r.theta, r.beta, r.functional, r.actual})
    row += "," + csv_number(x);
  row += "," + (r.fitted_constant ? csv_number(*r.fitted_constant) : std::string());
  row += "," + r.flags;
  return row;
}

std::string bounds_json(const std::vector<BoundReport>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["theorem"] = r.theorem;
    j["a"] = json_number(r.a);
    j["sigma"] = json_number(r.sigma);
    j["gamma"] = json_number(r.gamma);
    j["theta"] = json_number(r.theta);
    j["beta"] = json_number(r.beta);
    j["functional"] = json_number(r.functional);
    j["leading"] = json_number(r.leading);
    j["weighted"] = json_number(r.weighted);
    j["actual"] = r.actual;
    j["fitted_constant"] = r.fitted_constant ? json_number(*r.fitted_constant) : nullptr;
    j["flags"] = r.flags;
    out.push_back(std::move(j));
  }
  return out.dump();
}

}  // namespace hierspec
