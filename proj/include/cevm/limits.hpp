#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cevm/examples.hpp"

namespace cevm {

/// Location/scale functions for (Y_L - a(X_L)) / b(X_L). log_b is optional
/// and only consulted when b underflows.
struct NormingPair {
  std::function<double(double)> a;
  std::function<double(double)> b;
  std::function<double(double)> log_b;
  std::string description;

  /// Throws DomainError if b(x) is not a positive finite number.
  double residual(double x, double y) const;
};

/// The norming for each example (random norming by X_L).
NormingPair norming_for(ExampleId id);

/// a(x) = alpha x, b(x) = x^beta.
NormingPair canonical_norming(double alpha, double beta);

struct Atom {
  double location;  // may be -inf
  double weight;
};

struct LimitLaw {
  std::vector<Atom> atoms;
  std::optional<std::string> continuous_part;  // none of the five laws has one
  bool convergent = true;

  /// Right-continuous CDF on the extended line; -inf atoms count for every z.
  double cdf(double z) const;
  double total_weight() const;
  double weight_at_minus_infinity() const;
  /// Finite atom locations, ascending.
  std::vector<double> finite_locations() const;
};

/// Ex4_4 returns a law with convergent = false and no atoms.
LimitLaw limit_law_for(ExampleId id);

/// Step-function estimate of z -> P{(Y_L - a(X_L)) / b(X_L) <= z | X_L > t}.
/// mass_below_grid is the share at or below z_grid.front() (so it equals
/// g_hat.front()); mass_above_grid the share strictly above z_grid.back().
struct EmpiricalConditional {
  double threshold_t = 0.0;
  std::vector<double> z_grid;
  std::vector<double> g_hat;
  std::size_t n_exceed = 0;
  double mass_below_grid = 0.0;
  double mass_above_grid = 0.0;
};

inline constexpr std::size_t kMinExceedances = 50;

/// Residuals of all exceedances of t, in input order.
std::vector<double> exceedance_residuals(std::span<const LaplacePair> samples,
                                         const NormingPair& norming, double t);

EmpiricalConditional empirical_conditional(std::span<const LaplacePair> samples,
                                           const NormingPair& norming, double t,
                                           std::span<const double> z_grid);

/// k equally spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t k);

// -- convergence to the limit law ------------------------------------------

inline constexpr std::size_t kComparisonGridPoints = 512;
inline constexpr double kAtomExclusion = 0.05;

/// 512 points spanning the finite atoms of the law with margins of 1.
std::vector<double> comparison_grid(const LimitLaw& law);

/// sup |g_hat - G| over grid points at least `exclusion` away from every
/// finite atom.
double sup_distance(const EmpiricalConditional& est, const LimitLaw& law,
                    double exclusion = kAtomExclusion);

struct ConvergenceRow {
  double t;
  std::size_t n_exceed;
  double sup_distance;
  /// Binomial standard error 0.5 / sqrt(n_exceed), the largest Monte Carlo
  /// error of any g_hat value.
  double mc_sigma;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Each sup distance is no larger than the previous one plus 3 mc_sigma of
  /// the later threshold.
  bool non_increasing;
};

ConvergenceReport convergence_report(std::span<const LaplacePair> samples,
                                     const NormingPair& norming, const LimitLaw& law,
                                     std::span<const double> thresholds);

// -- mass escaping to -inf -------------------------------------------------

struct EscapingMass {
  double z_low;
  std::vector<double> t;
  std::vector<double> g_at_z_low;
  double estimate;  // value at the largest threshold
  double trend;     // least-squares slope of g_at_z_low against t
};

/// g_hat_t(z_low) across increasing thresholds. Without z_low, uses the
/// 10th-percentile residual at the smallest threshold minus 10.
EscapingMass mass_at_minus_infinity(std::span<const LaplacePair> samples,
                                    const NormingPair& norming,
                                    std::span<const double> t_sequence,
                                    std::optional<double> z_low = std::nullopt);

/// Same, with z_low one unit below the lowest finite atom of the example's
/// limit law (or -1 when there is none).
EscapingMass mass_at_minus_infinity(ExampleId id, std::span<const LaplacePair> samples,
                                    std::span<const double> t_sequence);

// -- Ex4_4 oscillation -----------------------------------------------------

/// P(B = 1 | X > t) = 1/3 + sin(log(2 - t)) / 6 for 1 < t < 2.
double oscillation_probe(double t);

struct OscillationPoint {
  double t;  // threshold on the Laplace scale
  std::size_t n_exceed;
  double empirical;
  double theoretical;
  double sigma;  // binomial standard error at the theoretical value
};

/// Theoretical curve at Laplace-scale thresholds, mapped back through the
/// Ex4_4 X-marginal quantile. Thresholds must exceed -log 2.
std::vector<double> theoretical_oscillation(std::span<const double> t_grid);

inline constexpr std::size_t kMinOscillationExceedances = 100;

std::vector<OscillationPoint> oscillation_diagnostic(std::span<const LabeledSample> samples,
                                                     std::span<const double> t_grid);

// -- tail dependence -------------------------------------------------------

struct UniformPair {
  double u;
  double v;
};

/// #{u > p and v > p} / #{u > p}.
double chi_estimator(std::span<const UniformPair> samples, double p);

/// Uniform scale through the example's closed-form marginal CDFs.
std::vector<UniformPair> to_uniform_exact(ExampleId id, std::span<const LabeledSample> samples);

/// Uniform scale through ranks r / (n + 1), ties broken by index.
std::vector<UniformPair> to_uniform_ranks(std::span<const double> x, std::span<const double> y);

// -- Ex4_4 reverse conditional ---------------------------------------------

/// Exact label-1 relation y_L = x_L - log h1(x_L) - log(1 + e^{-x_L} h1(x_L) / 2),
/// valid for x_L > 0.
double ex44_diagonal(double x_laplace);

/// Q(y_L) = y_L - x_L where x_L solves ex44_diagonal(x_L) = y_L. Needs y_L >= 2.
double ex44_q(double y_laplace);

/// Estimate of z -> P((X_L - Y_L) / Q(Y_L) < z | Y_L > y_threshold). Note the
/// strict inequality; the x/y roles of EmpiricalConditional are swapped.
EmpiricalConditional reverse_conditional_ex44(std::span<const LaplacePair> samples,
                                              double y_threshold,
                                              std::span<const double> z_grid);

}  // namespace cevm
