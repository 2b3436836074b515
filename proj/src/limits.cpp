#include "cevm/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cevm/csv.hpp"
#include "cevm/errors.hpp"
#include "cevm/margins.hpp"
#include "cevm/root_find.hpp"
#include "cevm/stats.hpp"

namespace cevm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2 = std::numbers::ln2;
// Below this b(x) is evaluated through log_b.
constexpr double kTinyScale = 1e-300;

void require_sorted(std::span<const double> v, const char* what, bool strict) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (strict ? !(v[i] > v[i - 1]) : !(v[i] >= v[i - 1])) {
      throw InvalidArgument(std::string(what) + " must be " +
                            (strict ? "strictly increasing" : "sorted"));
    }
  }
}

std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Share of `sorted` that is <= z (or < z when strict).
double share_at(const std::vector<double>& sorted, double z, bool strict) {
  const auto it = strict ? std::lower_bound(sorted.begin(), sorted.end(), z)
                         : std::upper_bound(sorted.begin(), sorted.end(), z);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

EmpiricalConditional summarize(double t, std::vector<double> residuals,
                               std::span<const double> z_grid, bool strict) {
  if (z_grid.empty()) throw InvalidArgument("z_grid must not be empty");
  require_sorted(z_grid, "z_grid", false);
  const auto sorted = sorted_copy(std::move(residuals));
  EmpiricalConditional out;
  out.threshold_t = t;
  out.z_grid.assign(z_grid.begin(), z_grid.end());
  out.n_exceed = sorted.size();
  out.g_hat.reserve(z_grid.size());
  for (double z : z_grid) out.g_hat.push_back(share_at(sorted, z, strict));
  out.mass_below_grid = out.g_hat.front();
  out.mass_above_grid = 1.0 - share_at(sorted, z_grid.back(), false);
  return out;
}

}  // namespace

double NormingPair::residual(double x, double y) const {
  const double loc = a(x);
  const double scale = b(x);
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(loc)) {
    if (scale == 0.0 && log_b) {
      // b underflowed; divide in log space instead.
      const double diff = y - loc;
      if (diff == 0.0) return 0.0;
      return std::copysign(std::exp(std::log(std::abs(diff)) - log_b(x)), diff);
    }
    throw DomainError("norming '" + description + "' is not defined at x_L = " +
                      format_double(x));
  }
  if (scale < kTinyScale && log_b) {
    const double diff = y - loc;
    if (diff == 0.0) return 0.0;
    return std::copysign(std::exp(std::log(std::abs(diff)) - log_b(x)), diff);
  }
  return (y - loc) / scale;
}

NormingPair norming_for(ExampleId id) {
  switch (id) {
    case ExampleId::Ex2_3:
    case ExampleId::Ex4_2:
      return {[](double x) { return x; }, [](double) { return 1.0; },
              [](double) { return 0.0; }, "a(x) = x, b(x) = 1"};
    case ExampleId::Ex3_1:
      return {[](double) { return 0.0; }, [](double x) { return std::exp(-x); },
              [](double x) { return -x; }, "a(x) = 0, b(x) = exp(-x)"};
    case ExampleId::Ex3_2:
      return {[](double x) { return x; },
              [](double x) { return x > 1.0 ? std::log(x) : -1.0; },
              [](double x) { return std::log(std::log(x)); }, "a(x) = x, b(x) = log x"};
    case ExampleId::Ex4_4:
      return {[](double x) { return x - std::exp(-x) * osc::h1(x); },
              [](double x) {
                const double h = osc::h1(x);
                return -std::log(h) + 0.5 * h * std::exp(-x);
              },
              {},
              "a(x) = x - exp(-x) h1(x), b(x) = -log h1(x) + h1(x) exp(-x) / 2"};
  }
  throw InvalidArgument("unknown example");
}

NormingPair canonical_norming(double alpha, double beta) {
  return {[alpha](double x) { return alpha * x; },
          [beta](double x) { return x > 0.0 ? std::pow(x, beta) : -1.0; },
          [beta](double x) { return beta * std::log(x); },
          "a(x) = " + format_double(alpha) + " x, b(x) = x^" + format_double(beta)};
}

double LimitLaw::cdf(double z) const {
  double acc = 0.0;
  for (const auto& atom : atoms) {
    if (atom.location <= z) acc += atom.weight;
  }
  return acc;
}

double LimitLaw::total_weight() const {
  double acc = 0.0;
  for (const auto& atom : atoms) acc += atom.weight;
  return acc;
}

double LimitLaw::weight_at_minus_infinity() const {
  double acc = 0.0;
  for (const auto& atom : atoms) {
    if (atom.location == -kInf) acc += atom.weight;
  }
  return acc;
}

std::vector<double> LimitLaw::finite_locations() const {
  std::vector<double> out;
  for (const auto& atom : atoms) {
    if (std::isfinite(atom.location)) out.push_back(atom.location);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LimitLaw limit_law_for(ExampleId id) {
  switch (id) {
    case ExampleId::Ex2_3:
    case ExampleId::Ex4_2:
      return {{{-kInf, 0.5}, {kLog2, 0.5}}, std::nullopt, true};
    case ExampleId::Ex3_1:
      return {{{-0.5, 0.5}, {0.5, 0.5}}, std::nullopt, true};
    case ExampleId::Ex3_2:
      return {{{-kInf, 0.5}, {-1.0, 0.5}}, std::nullopt, true};
    case ExampleId::Ex4_4:
      return {{}, std::nullopt, false};
  }
  throw InvalidArgument("unknown example");
}

std::vector<double> exceedance_residuals(std::span<const LaplacePair> samples,
                                         const NormingPair& norming, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("threshold must be finite");
  std::vector<double> out;
  for (const auto& p : samples) {
    if (p.x > t) out.push_back(norming.residual(p.x, p.y));
  }
  return out;
}

EmpiricalConditional empirical_conditional(std::span<const LaplacePair> samples,
                                           const NormingPair& norming, double t,
                                           std::span<const double> z_grid) {
  auto residuals = exceedance_residuals(samples, norming, t);
  if (residuals.size() < kMinExceedances) {
    throw InsufficientData("empirical_conditional: too few exceedances of t = " +
                               format_double(t),
                           residuals.size(), kMinExceedances);
  }
  return summarize(t, std::move(residuals), z_grid, false);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t k) {
  if (k < 2) throw InvalidArgument("grid needs at least two points");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("grid bounds must be finite with lo < hi");
  }
  std::vector<double> out(k);
  const double step = (hi - lo) / static_cast<double>(k - 1);
  for (std::size_t i = 0; i < k; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> comparison_grid(const LimitLaw& law) {
  const auto locs = law.finite_locations();
  if (locs.empty()) throw DomainError("comparison_grid: limit law has no finite atoms");
  return linear_grid(locs.front() - 1.0, locs.back() + 1.0, kComparisonGridPoints);
}

double sup_distance(const EmpiricalConditional& est, const LimitLaw& law, double exclusion) {
  if (!law.convergent) throw DomainError("sup_distance: no limit law to compare against");
  const auto locs = law.finite_locations();
  double d = 0.0;
  for (std::size_t j = 0; j < est.z_grid.size(); ++j) {
    const double z = est.z_grid[j];
    const bool near_atom = std::any_of(locs.begin(), locs.end(), [&](double a) {
      return std::abs(z - a) <= exclusion;
    });
    if (!near_atom) d = std::max(d, std::abs(est.g_hat[j] - law.cdf(z)));
  }
  return d;
}

ConvergenceReport convergence_report(std::span<const LaplacePair> samples,
                                     const NormingPair& norming, const LimitLaw& law,
                                     std::span<const double> thresholds) {
  require_sorted(thresholds, "thresholds", true);
  const auto grid = comparison_grid(law);
  ConvergenceReport report{{}, true};
  for (double t : thresholds) {
    const auto est = empirical_conditional(samples, norming, t, grid);
    report.rows.push_back({t, est.n_exceed, sup_distance(est, law),
                           0.5 / std::sqrt(static_cast<double>(est.n_exceed))});
  }
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    const auto& prev = report.rows[k - 1];
    const auto& cur = report.rows[k];
    if (cur.sup_distance > prev.sup_distance + 3.0 * cur.mc_sigma) {
      report.non_increasing = false;
    }
  }
  return report;
}

EscapingMass mass_at_minus_infinity(std::span<const LaplacePair> samples,
                                    const NormingPair& norming,
                                    std::span<const double> t_sequence,
                                    std::optional<double> z_low) {
  if (t_sequence.empty()) throw InvalidArgument("t_sequence must not be empty");
  require_sorted(t_sequence, "t_sequence", true);
  EscapingMass out;
  if (z_low) {
    out.z_low = *z_low;
  } else {
    auto first = exceedance_residuals(samples, norming, t_sequence.front());
    if (first.size() < kMinExceedances) {
      throw InsufficientData("mass_at_minus_infinity: too few exceedances of t = " +
                                 format_double(t_sequence.front()),
                             first.size(), kMinExceedances);
    }
    out.z_low = stats::quantile(std::move(first), 0.1) - 10.0;
  }
  const double grid[] = {out.z_low};
  for (double t : t_sequence) {
    const auto est = empirical_conditional(samples, norming, t, grid);
    out.t.push_back(t);
    out.g_at_z_low.push_back(est.g_hat.front());
  }
  out.estimate = out.g_at_z_low.back();
  out.trend = out.t.size() >= 2 ? stats::ols_slope(out.t, out.g_at_z_low) : 0.0;
  return out;
}

EscapingMass mass_at_minus_infinity(ExampleId id, std::span<const LaplacePair> samples,
                                    std::span<const double> t_sequence) {
  const auto locs = limit_law_for(id).finite_locations();
  const double z_low = locs.empty() ? -1.0 : locs.front() - 1.0;
  return mass_at_minus_infinity(samples, norming_for(id), t_sequence, z_low);
}

double oscillation_probe(double t) {
  if (!(t > 1.0 && t < 2.0)) {
    throw DomainError("oscillation_probe: t = " + format_double(t) + " outside (1, 2)");
  }
  return 1.0 / 3.0 + std::sin(std::log(2.0 - t)) / 6.0;
}

std::vector<double> theoretical_oscillation(std::span<const double> t_grid) {
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > -kLog2)) {
      throw DomainError("theoretical_oscillation: threshold " + format_double(t) +
                        " must exceed -log 2");
    }
    const double t_original = marginal_quantile_x(ExampleId::Ex4_4, laplace_cdf(t));
    out.push_back(oscillation_probe(t_original));
  }
  return out;
}

std::vector<OscillationPoint> oscillation_diagnostic(std::span<const LabeledSample> samples,
                                                     std::span<const double> t_grid) {
  const auto theory = theoretical_oscillation(t_grid);
  std::vector<double> x_laplace;
  std::vector<int> labels;
  x_laplace.reserve(samples.size());
  labels.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.b_label < 1 || s.b_label > 4) {
      throw InvalidArgument("oscillation_diagnostic: samples must carry Ex4_4 labels");
    }
    x_laplace.push_back(to_laplace_pair(ExampleId::Ex4_4, s).x);
    labels.push_back(s.b_label);
  }
  std::vector<OscillationPoint> out;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid[k];
    std::size_t n = 0, ones = 0;
    for (std::size_t i = 0; i < x_laplace.size(); ++i) {
      if (x_laplace[i] > t) {
        ++n;
        ones += labels[i] == 1;
      }
    }
    if (n < kMinOscillationExceedances) {
      throw InsufficientData("oscillation_diagnostic: too few exceedances of t = " +
                                 format_double(t),
                             n, kMinOscillationExceedances);
    }
    const double p = theory[k];
    out.push_back({t, n, static_cast<double>(ones) / static_cast<double>(n), p,
                   std::sqrt(p * (1.0 - p) / static_cast<double>(n))});
  }
  return out;
}

double chi_estimator(std::span<const UniformPair> samples, double p) {
  if (!(p > 0.5 && p < 1.0)) throw DomainError("chi_estimator: p must lie in (0.5, 1)");
  std::size_t marginal = 0, joint = 0;
  for (const auto& s : samples) {
    if (s.u > p) {
      ++marginal;
      joint += s.v > p;
    }
  }
  if (marginal == 0) throw InsufficientData("chi_estimator: no exceedances of p", 0, 1);
  return static_cast<double>(joint) / static_cast<double>(marginal);
}

std::vector<UniformPair> to_uniform_exact(ExampleId id, std::span<const LabeledSample> samples) {
  std::vector<UniformPair> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({marginal_cdf_x(id, s.x), marginal_cdf_y(id, s.y)});
  }
  return out;
}

std::vector<UniformPair> to_uniform_ranks(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("to_uniform_ranks: length mismatch");
  if (x.size() < 2) throw InsufficientData("to_uniform_ranks: need two pairs", x.size(), 2);
  const auto rx = ranks_by_index(x);
  const auto ry = ranks_by_index(y);
  const double denom = static_cast<double>(x.size()) + 1.0;
  std::vector<UniformPair> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = {static_cast<double>(rx[i]) / denom, static_cast<double>(ry[i]) / denom};
  }
  return out;
}

double ex44_diagonal(double x_laplace) {
  const double h = osc::h1(x_laplace);
  return x_laplace - std::log(h) - std::log1p(0.5 * std::exp(-x_laplace) * h);
}

double ex44_q(double y_laplace) {
  if (!(y_laplace >= 2.0) || !std::isfinite(y_laplace)) {
    throw DomainError("ex44_q: y_L = " + format_double(y_laplace) + " below 2");
  }
  // x - log(3/2) <= diagonal(x) <= x + log 3.
  const double lo = std::max(0.0, y_laplace - 2.0);
  const double x = bisect_increasing(ex44_diagonal, y_laplace, lo, y_laplace + 1.0, 1e-10,
                                     "ex44_q inversion");
  return y_laplace - x;
}

EmpiricalConditional reverse_conditional_ex44(std::span<const LaplacePair> samples,
                                              double y_threshold,
                                              std::span<const double> z_grid) {
  if (!(y_threshold >= 2.0)) throw DomainError("reverse_conditional_ex44: threshold below 2");
  std::vector<double> ratios;
  for (const auto& p : samples) {
    if (p.y > y_threshold) {
      const double q = ex44_q(p.y);
      if (q == 0.0) throw NumericError("reverse_conditional_ex44: Q(y_L) vanished");
      ratios.push_back((p.x - p.y) / q);
    }
  }
  if (ratios.size() < kMinExceedances) {
    throw InsufficientData("reverse_conditional_ex44: too few exceedances of y = " +
                               format_double(y_threshold),
                           ratios.size(), kMinExceedances);
  }
  return summarize(y_threshold, std::move(ratios), z_grid, true);
}

}  // namespace cevm
