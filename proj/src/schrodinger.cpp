#include "hierspec/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hierspec/dense.hpp"
#include "hierspec/errors.hpp"
#include "hierspec/lanczos.hpp"

namespace hierspec {

void Potential::set(std::uint64_t site, double value) {
  if (!std::isfinite(value) || value < 0.0)
    throw DomainError("potential values must be finite and >= 0");
  if (value == 0.0) {
    values.erase(site);
  } else {
    values[site] = value;
  }
}

double Potential::at(std::uint64_t site) const {
  const auto it = values.find(site);
  return it == values.end() ? 0.0 : it->second;
}

Eigen::VectorXd Potential::on_grid(const VolumeGrid& grid) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (const auto& [site, value] : values) {
    if (site >= grid.size()) throw DomainError("potential support leaves the volume");
    out(static_cast<Eigen::Index>(site)) = value;
  }
  return out;
}

Potential Potential::scaled(double factor) const {
  Potential out;
  out.origin = origin;
  for (const auto& [site, value] : values) out.set(site, value * factor);
  return out;
}

namespace {

double json_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
      throw DomainError("potential value is not a decimal: " + s);
    return v;
  }
  throw DomainError("potential value must be a number or decimal string");
}

}  // namespace

Potential parse_potential(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("potential file is not valid JSON: ") + e.what());
  }
  Potential out;
  if (!doc.is_object() || !doc.contains("sites") || !doc["sites"].is_array())
    throw DomainError("potential JSON needs a \"sites\" array");
  if (doc.contains("origin")) out.origin = doc["origin"].get<std::uint64_t>();
  for (const auto& entry : doc["sites"]) {
    if (!entry.is_array() || entry.size() != 2)
      throw DomainError("each site entry must be [index, value]");
    out.set(entry[0].get<std::uint64_t>(), json_number(entry[1]));
  }
  return out;
}

std::string dump_potential(const Potential& v) {
  nlohmann::json doc;
  doc["origin"] = v.origin;
  doc["sites"] = nlohmann::json::array();
  for (const auto& [site, value] : v.values) doc["sites"].push_back({site, value});
  return doc.dump();
}

Potential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read potential file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_potential(buf.str());
}

Potential powerlaw_potential(const VolumeGrid& grid, std::uint64_t x0, double theta,
                             double beta, int radius) {
  if (radius < 0 || radius > grid.depth) throw DomainError("radius must lie in [0, depth]");
  if (x0 >= grid.size()) throw DomainError("origin outside the volume");
  if (!(theta >= 0.0) || !(beta > 0.0)) throw DomainError("need theta >= 0 and beta > 0");
  const int nu = grid.params.nu();
  Potential out;
  out.origin = x0;
  const Site origin = Site::from_index(x0, nu);
  for (const std::uint64_t x : cube_members(cube_of(origin, radius), nu)) {
    const double rho = rho_from_distance(hier_distance(x0, x, nu), grid.params);
    out.set(x, theta * std::pow(1.0 + rho, -beta));
  }
  return out;
}

double EigenReport::sum(double gamma) const {
  for (const auto& [g, s] : sums)
    if (g == gamma) return s;
  double s = 0.0;
  for (double v : eigenvalues) s += std::pow(v, gamma);
  return s;
}

namespace {

struct Support {
  std::vector<std::uint64_t> sites;
  Eigen::VectorXd root;  // sqrt(V)
};

Support support_of(const VolumeGrid& grid, const Potential& v) {
  Support s;
  for (const auto& [site, value] : v.values) {
    if (site >= grid.size()) throw DomainError("potential support leaves the volume");
    s.sites.push_back(site);
  }
  s.root.resize(static_cast<Eigen::Index>(s.sites.size()));
  Eigen::Index i = 0;
  for (const auto& [site, value] : v.values) s.root(i++) = std::sqrt(value);
  return s;
}

std::vector<double> kernel_by_distance(const VolumeGrid& grid, double tau) {
  std::vector<double> g(static_cast<std::size_t>(grid.depth) + 1);
  for (int d = 0; d <= grid.depth; ++d)
    g[static_cast<std::size_t>(d)] = dirichlet_resolvent_kernel(grid, tau, d);
  return g;
}

Eigen::MatrixXd birman_schwinger(const VolumeGrid& grid, const Support& s, double tau) {
  const auto m = static_cast<Eigen::Index>(s.sites.size());
  if (static_cast<std::size_t>(m) > grid.dense_cap)
    throw DomainError("potential support exceeds the dense cap");
  const auto g = kernel_by_distance(grid, tau);
  const int nu = grid.params.nu();
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i)
      k(i, j) = s.root(i) * s.root(j) *
                g[static_cast<std::size_t>(hier_distance(s.sites[static_cast<std::size_t>(i)],
                                                         s.sites[static_cast<std::size_t>(j)], nu))];
  return k;
}

// Rebuilds the eigenvector for eigenvalue lambda from the Birman-Schwinger
// kernel and returns its relative residual under the fast operator.
double reconstructed_residual(const VolumeGrid& grid, const Potential& v, const Support& s,
                              double lambda) {
  const auto eig = symmetric_eigen(birman_schwinger(grid, s, lambda));
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < eig.values.size(); ++k)
    if (std::abs(eig.values(k) - 1.0) < std::abs(eig.values(best) - 1.0)) best = k;
  const Eigen::VectorXd phi = eig.vectors.col(best).cwiseProduct(s.root);
  const auto g = kernel_by_distance(grid, lambda);
  const int nu = grid.params.nu();
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.sites.size(); ++j)
      acc += g[static_cast<std::size_t>(hier_distance(static_cast<std::uint64_t>(x), s.sites[j], nu))] *
             phi(static_cast<Eigen::Index>(j));
    psi(x) = acc;
  }
  const Eigen::VectorXd h_psi =
      apply_laplacian(psi, grid, ApplyMode::fast) + v.on_grid(grid).cwiseProduct(psi);
  return (h_psi - lambda * psi).norm() / psi.norm();
}

}  // namespace

std::size_t count_above(const VolumeGrid& grid, const Potential& v, double tau) {
  if (!(tau > 0.0)) throw DomainError("the Birman-Schwinger count needs tau > 0");
  const Support s = support_of(grid, v);
  if (s.sites.empty()) return 0;
  const Eigen::VectorXd k = symmetric_eigenvalues(birman_schwinger(grid, s, tau));
  return static_cast<std::size_t>((k.array() > 1.0).count());
}

EigenReport positive_spectrum(const VolumeGrid& grid, const Potential& v,
                              const SpectrumOptions& options) {
  EigenReport report;
  report.depth = grid.depth;
  report.threshold = options.threshold;
  const Support s = support_of(grid, v);
  report.inertia_count = s.sites.empty() ? 0 : count_above(grid, v, options.threshold);
  const bool dense = !options.iterative && grid.size() <= grid.dense_cap;
  if (dense) {
    report.method = "dense";
    const Eigen::VectorXd w = symmetric_eigenvalues(assemble_dense(grid, v.on_grid(grid)));
    for (Eigen::Index i = w.size() - 1; i >= 0 && w(i) > options.threshold; --i)
      report.eigenvalues.push_back(w(i));
  } else {
    report.method = "iterative";
    if (report.inertia_count > 0) {
      const Eigen::VectorXd diag = v.on_grid(grid);
      LanczosOptions lo;
      lo.seed = options.seed;
      const auto pairs = lanczos_largest(
          [&](const Eigen::VectorXd& x) {
            return Eigen::VectorXd(apply_laplacian(x, grid, ApplyMode::fast) + diag.cwiseProduct(x));
          },
          static_cast<Eigen::Index>(grid.size()), report.inertia_count, lo);
      for (double value : pairs.values) {
        if (!(value > options.threshold))
          throw CertificationError("Lanczos eigenvalues disagree with the inertia count");
        report.eigenvalues.push_back(value);
      }
    }
  }
  report.count = report.eigenvalues.size();
  if (report.count != report.inertia_count)
    throw CertificationError("eigenvalue count " + std::to_string(report.count) +
                             " disagrees with the Birman-Schwinger count " +
                             std::to_string(report.inertia_count));
  const std::size_t nres = std::min(report.count, options.max_residuals);
  for (std::size_t i = 0; i < nres; ++i)
    report.residuals.push_back(reconstructed_residual(grid, v, s, report.eigenvalues[i]));
  return report;
}

EigenReport count_and_sums(const VolumeGrid& grid, const Potential& v,
                           const std::vector<double>& gammas, const SpectrumOptions& options) {
  EigenReport report = positive_spectrum(grid, v, options);
  for (double gamma : gammas) {
    if (!(gamma > 0.0)) throw DomainError("Lieb-Thirring exponents must be > 0");
    double s = 0.0;
    for (double value : report.eigenvalues) s += std::pow(value, gamma);
    report.sums.emplace_back(gamma, s);
  }
  return report;
}

}  // namespace hierspec
