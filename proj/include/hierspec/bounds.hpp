#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hierspec/schrodinger.hpp"

namespace hierspec {

/// Tags for the bound functionals, named by content.
namespace tag {
inline constexpr const char* kClr = "clr";
inline constexpr const char* kLt = "lt";
inline constexpr const char* kLtMoment = "lt-moment";
inline constexpr const char* kClrAnnihilated = "clr-annihilated";
inline constexpr const char* kLtAnnihilated = "lt-annihilated";
inline constexpr const char* kLtAnnihilatedMoment = "lt-annihilated-moment";
inline constexpr const char* kBargmannClassic = "bargmann-classic";
inline constexpr const char* kBargmannUniform = "bargmann-uniform";
inline constexpr const char* kBargmannRefined = "bargmann-refined";
}  // namespace tag

/// One bound functional evaluated on one potential. Parameters that do not
/// apply to the functional are NaN. `functional` = `leading` + `weighted`
/// with every unspecified constant set to 1.
struct BoundReport {
  static constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

  std::string theorem;
  double a = kNone;
  double sigma = kNone;
  double gamma = kNone;
  double theta = kNone;
  double beta = kNone;
  /// Cardinality, constant and Lambda^gamma terms.
  double leading = 0.0;
  /// The potential-weighted sum.
  double weighted = 0.0;
  double functional = 0.0;
  /// N_0 or S_gamma.
  double actual = 0.0;
  /// actual / functional when the functional is finite and positive.
  std::optional<double> fitted_constant;
  /// Semicolon-separated: divergent, recurrent, ...
  std::string flags;

  bool divergent() const;
};

/// CLR bound: #{V > a} + sum_{V <= a} V integral_{sigma/V}^inf p(t,x,x) dt.
BoundReport clr_functional(const VolumeGrid& grid, const Potential& v, double a, double sigma,
                           const EigenReport& actual);

/// Lieb-Thirring bounds for S_gamma: the p-integral form, the t^-gamma moment
/// form (with its 2 gamma Gamma(gamma) factor) and the two annihilated forms
/// with the Lambda^gamma term. Forms whose integrals diverge are flagged.
std::vector<BoundReport> lt_functionals(const VolumeGrid& grid, const Potential& v,
                                        double gamma, double sigma, const EigenReport& actual);

/// CLR bound for the walk annihilated at the potential's origin:
/// 1 + #{V > a} + sum_{V <= a} V integral_{sigma/V}^inf p1(t,x,x) dt.
BoundReport clr_general_functional(const VolumeGrid& grid, const Potential& v, double a,
                                   double sigma, const EigenReport& actual);

/// Bargmann-type functionals around the potential's origin: classic and
/// refined (s_h < 2) and uniform (all s_h, logarithmic at s_h = 2).
std::vector<BoundReport> bargmann_functionals(const VolumeGrid& grid, const Potential& v,
                                              const EigenReport& actual);

struct SweepConfig {
  std::uint64_t origin = 0;
  double beta = 3.0;
  int radius = 0;  // 0 means grid.depth
  std::vector<double> thetas;
  double a = 1.0;
  std::vector<double> sigmas{0.0, 1.0};
  std::vector<double> gammas{0.5, 1.0};
  /// Empty selects every functional.
  std::vector<std::string> theorems;
  SpectrumOptions spectrum;
};

struct SweepSummary {
  std::string theorem;
  double sigma = BoundReport::kNone;
  double gamma = BoundReport::kNone;
  /// Largest and smallest fitted constants over the sweep (rows with one).
  double max_fitted = 0.0;
  double min_fitted = 0.0;
  std::size_t rows = 0;
};

struct SweepResult {
  std::vector<BoundReport> rows;  // lexicographic in (theorem, a, sigma, gamma, theta, beta)
  std::vector<SweepSummary> summaries;
};

/// Evaluates the selected functionals over a power-law family
/// theta (1 + rho(x0, x))^-beta.
SweepResult bound_report(const VolumeGrid& grid, const SweepConfig& config);

std::string bounds_csv_header();
std::string to_csv_row(const BoundReport& r);
/// JSON array mirroring the CSV rows (keys sorted).
std::string bounds_json(const std::vector<BoundReport>& rows);

}  // namespace hierspec
