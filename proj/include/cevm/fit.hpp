#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cevm/examples.hpp"

namespace cevm {

struct FitConfig {
  double threshold_quantile = 0.95;
  std::pair<double, double> alpha_bounds{-1.0, 1.0};
  std::pair<double, double> beta_bounds{-5.0, 1.0 - 1e-6};
  double optimizer_tol = 1e-10;
  std::size_t max_iter = 4000;

  /// Throws InvalidArgument on bounds outside [-1,1] x [-5, 1 - 1e-6] or
  /// a threshold quantile outside [0.5, 1).
  void validate() const;
};

struct FitResult {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> residuals;
  double neg_log_lik = 0.0;
  bool converged = false;
  std::size_t n_exceed = 0;
};

void to_json(nlohmann::json& j, const FitResult& r);
void from_json(const nlohmann::json& j, FitResult& r);

inline constexpr std::size_t kMinFitExceedances = 100;
/// Residual standard deviations are floored here so that an exact fit has a
/// finite likelihood.
inline constexpr double kSigmaFloor = 1e-12;

/// The exceedances a fit uses: the pairs with x_L above the threshold
/// quantile of x_L, sorted by (x_L, y_L).
std::vector<LaplacePair> fit_exceedances(std::span<const LaplacePair> samples,
                                         double threshold_quantile);

/// Profiled Gaussian negative log pseudo-likelihood at (alpha, beta): mu and
/// sigma are replaced by the mean and standard deviation of the residuals.
double canonical_neg_log_lik(std::span<const LaplacePair> exceedances, double alpha,
                             double beta);

/// The 5 x 5 multistart grid, alpha-major.
std::vector<std::array<double, 2>> multistart_grid(const FitConfig& cfg);

FitResult fit_canonical(std::span<const LaplacePair> samples, const FitConfig& cfg = {});

struct MisfitReport {
  std::size_t n_exceed = 0;
  double residual_x_correlation = 0.0;
  /// Least-squares slopes of log|d| with d = y - alpha x - mu x^beta.
  double log_deviation_slope_log_x = 0.0;
  double log_deviation_slope_x = 0.0;
  /// Slope of |y - x - mean(y - x)| against log x: the a(x) = x, b(x) = 1
  /// starting point.
  double identity_deviation_slope_log_x = 0.0;
  double identity_deviation_slope_se = 0.0;
  double ks_split_statistic = 0.0;
  double ks_split_pvalue = 1.0;
  bool degenerate = false;
  std::vector<std::string> flags;
  bool in_canonical_family = true;
};

void to_json(nlohmann::json& j, const MisfitReport& r);

/// Recomputes the exceedances as the n_exceed largest x_L of `samples`.
MisfitReport residual_diagnostics(const FitResult& fit, std::span<const LaplacePair> samples);

/// Writes a "residual" header row and one value per line.
void write_residuals_csv(std::ostream& out, const FitResult& fit);

}  // namespace cevm
