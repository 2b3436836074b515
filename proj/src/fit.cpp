#include "cevm/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cevm/csv.hpp"
#include "cevm/errors.hpp"
#include "cevm/stats.hpp"

namespace cevm {
namespace {

using Point = std::array<double, 2>;

Point clip(Point p, const FitConfig& cfg) {
  p[0] = std::clamp(p[0], cfg.alpha_bounds.first, cfg.alpha_bounds.second);
  p[1] = std::clamp(p[1], cfg.beta_bounds.first, cfg.beta_bounds.second);
  return p;
}

struct Profile {
  double mu;
  double sigma;
  double neg_log_lik;
};

Profile profile(std::span<const LaplacePair> ex, std::span<const double> log_x, double alpha,
                double beta) {
  const double n = static_cast<double>(ex.size());
  double sum = 0.0, sum_log = 0.0;
  std::vector<double> r(ex.size());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    r[i] = (ex[i].y - alpha * ex[i].x) * std::exp(-beta * log_x[i]);
    sum += r[i];
    sum_log += log_x[i];
  }
  const double mu = sum / n;
  double ss = 0.0;
  for (double v : r) ss += (v - mu) * (v - mu);
  const double sigma = std::max(std::sqrt(ss / n), kSigmaFloor);
  const double nll =
      beta * sum_log + n * std::log(sigma) + 0.5 * n * (1.0 + std::log(2.0 * std::numbers::pi));
  return {mu, sigma, std::isfinite(nll) ? nll : std::numeric_limits<double>::infinity()};
}

struct LocalResult {
  Point start;
  Point best;
  double value;
  std::size_t iterations;
  bool converged;
};

// Nelder-Mead on the box; every trial point is clipped before evaluation.
template <class F>
LocalResult nelder_mead(F&& f, Point start, const FitConfig& cfg) {
  const Point width{cfg.alpha_bounds.second - cfg.alpha_bounds.first,
                    cfg.beta_bounds.second - cfg.beta_bounds.first};
  std::array<Point, 3> s;
  std::array<double, 3> v;
  s[0] = clip(start, cfg);
  for (int k = 0; k < 2; ++k) {
    Point p = s[0];
    const double step = 0.05 * width[k];
    const double hi = k == 0 ? cfg.alpha_bounds.second : cfg.beta_bounds.second;
    p[k] = p[k] + step <= hi ? p[k] + step : p[k] - step;
    s[k + 1] = clip(p, cfg);
  }
  for (int k = 0; k < 3; ++k) v[k] = f(s[k]);

  const double x_tol = std::sqrt(cfg.optimizer_tol);
  std::size_t it = 0;
  bool converged = false;
  for (; it < cfg.max_iter; ++it) {
    std::array<int, 3> o{0, 1, 2};
    std::sort(o.begin(), o.end(), [&](int a, int b) { return v[a] < v[b]; });
    const Point best = s[o[0]], mid = s[o[1]], worst = s[o[2]];
    const double fb = v[o[0]], fm = v[o[1]], fw = v[o[2]];
    s = {best, mid, worst};
    v = {fb, fm, fw};

    double diameter = 0.0;
    for (int k = 1; k < 3; ++k) {
      diameter = std::max({diameter, std::abs(s[k][0] - best[0]), std::abs(s[k][1] - best[1])});
    }
    if (diameter <= x_tol && fw - fb <= cfg.optimizer_tol * (1.0 + std::abs(fb))) {
      converged = true;
      break;
    }

    const Point c{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
    auto along = [&](double t) {
      return clip(Point{c[0] + t * (worst[0] - c[0]), c[1] + t * (worst[1] - c[1])}, cfg);
    };
    const Point xr = along(-1.0);
    const double fr = f(xr);
    if (fr < fb) {
      const Point xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[2] = xe, v[2] = fe;
      } else {
        s[2] = xr, v[2] = fr;
      }
      continue;
    }
    if (fr < fm) {
      s[2] = xr, v[2] = fr;
      continue;
    }
    const bool outside = fr < fw;
    const Point xc = along(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : fw)) {
      s[2] = xc, v[2] = fc;
      continue;
    }
    for (int k = 1; k < 3; ++k) {
      s[k] = clip(Point{best[0] + 0.5 * (s[k][0] - best[0]), best[1] + 0.5 * (s[k][1] - best[1])},
                  cfg);
      v[k] = f(s[k]);
    }
  }
  const auto k = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  return {start, s[k], v[k], it, converged};
}

std::vector<LaplacePair> sorted_pairs(std::span<const LaplacePair> samples) {
  std::vector<LaplacePair> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end(), [](const LaplacePair& a, const LaplacePair& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  return v;
}

std::vector<double> logs_of_x(std::span<const LaplacePair> ex) {
  std::vector<double> out(ex.size());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (!(ex[i].x > 0.0)) {
      throw DomainError("canonical fit needs positive x_L, got " + format_double(ex[i].x));
    }
    out[i] = std::log(ex[i].x);
  }
  return out;
}

}  // namespace

void FitConfig::validate() const {
  if (!(threshold_quantile >= 0.5 && threshold_quantile < 1.0)) {
    throw InvalidArgument("threshold_quantile must lie in [0.5, 1)");
  }
  if (!(alpha_bounds.first >= -1.0 && alpha_bounds.second <= 1.0 &&
        alpha_bounds.first < alpha_bounds.second)) {
    throw InvalidArgument("alpha_bounds must be an interval inside [-1, 1]");
  }
  if (!(beta_bounds.first >= -5.0 && beta_bounds.second <= 1.0 - 1e-6 &&
        beta_bounds.first < beta_bounds.second)) {
    throw InvalidArgument("beta_bounds must be an interval inside [-5, 1 - 1e-6]");
  }
  if (!(optimizer_tol > 0.0)) throw InvalidArgument("optimizer_tol must be positive");
  if (max_iter == 0) throw InvalidArgument("max_iter must be positive");
}

void to_json(nlohmann::json& j, const FitResult& r) {
  j = nlohmann::json{{"alpha", r.alpha},         {"beta", r.beta},
                     {"mu", r.mu},               {"sigma", r.sigma},
                     {"residuals", r.residuals}, {"neg_log_lik", r.neg_log_lik},
                     {"converged", r.converged}, {"n_exceed", r.n_exceed}};
}

void from_json(const nlohmann::json& j, FitResult& r) {
  j.at("alpha").get_to(r.alpha);
  j.at("beta").get_to(r.beta);
  j.at("mu").get_to(r.mu);
  j.at("sigma").get_to(r.sigma);
  j.at("residuals").get_to(r.residuals);
  j.at("neg_log_lik").get_to(r.neg_log_lik);
  j.at("converged").get_to(r.converged);
  j.at("n_exceed").get_to(r.n_exceed);
}

std::vector<LaplacePair> fit_exceedances(std::span<const LaplacePair> samples,
                                         double threshold_quantile) {
  if (samples.empty()) throw InsufficientData("fit: empty sample", 0, kMinFitExceedances);
  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& p : samples) xs.push_back(p.x);
  const double u = stats::quantile(std::move(xs), threshold_quantile);
  std::vector<LaplacePair> out;
  for (const auto& p : sorted_pairs(samples)) {
    if (p.x > u) out.push_back(p);
  }
  return out;
}

double canonical_neg_log_lik(std::span<const LaplacePair> exceedances, double alpha,
                             double beta) {
  const auto lx = logs_of_x(exceedances);
  return profile(exceedances, lx, alpha, beta).neg_log_lik;
}

std::vector<std::array<double, 2>> multistart_grid(const FitConfig& cfg) {
  const auto [a0, a1] = cfg.alpha_bounds;
  const auto [b0, b1] = cfg.beta_bounds;
  // Interior points; beta starts cluster where the examples' scales live.
  const double af[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  const double bf[] = {-1.5, -0.75, 0.0, 0.45, 0.9};
  std::vector<std::array<double, 2>> out;
  for (double fa : af) {
    for (double b : bf) {
      out.push_back({a0 + fa * (a1 - a0), std::clamp(b, b0 + 0.1 * (b1 - b0), b1 - 0.05 * (b1 - b0))});
    }
  }
  return out;
}

FitResult fit_canonical(std::span<const LaplacePair> samples, const FitConfig& cfg) {
  cfg.validate();
  const auto ex = fit_exceedances(samples, cfg.threshold_quantile);
  if (ex.size() < kMinFitExceedances) {
    throw InsufficientData("fit_canonical: too few exceedances", ex.size(), kMinFitExceedances);
  }
  const auto lx = logs_of_x(ex);
  auto objective = [&](const Point& p) { return profile(ex, lx, p[0], p[1]).neg_log_lik; };

  std::vector<LocalResult> runs;
  for (const auto& start : multistart_grid(cfg)) {
    auto run = nelder_mead(objective, start, cfg);
    if (run.converged) {
      // A fresh simplex guards against collapse onto a bound.
      auto polish = nelder_mead(objective, run.best, cfg);
      if (polish.value <= run.value) {
        run.best = polish.best;
        run.value = polish.value;
        run.iterations += polish.iterations;
      }
      run.converged = polish.converged;
    }
    runs.push_back(run);
  }

  const LocalResult* chosen = nullptr;
  double best_value = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    if (r.converged) best_value = std::min(best_value, r.value);
  }
  const double tie = 1e-9 * std::max(1.0, std::abs(best_value));
  for (const auto& r : runs) {
    if (!r.converged || r.value > best_value + tie) continue;
    if (!chosen) {
      chosen = &r;
      continue;
    }
    const double db = std::abs(r.best[1]) - std::abs(chosen->best[1]);
    const double da = std::abs(r.best[0]) - std::abs(chosen->best[0]);
    if (db < 0.0 || (db == 0.0 && da < 0.0)) chosen = &r;
  }
  if (!chosen) {
    std::ostringstream trace;
    trace << "fit_canonical: no multistart point converged;";
    for (const auto& r : runs) {
      trace << " start(" << format_double(r.start[0]) << ',' << format_double(r.start[1])
            << ")->(" << format_double(r.best[0]) << ',' << format_double(r.best[1])
            << ") nll=" << format_double(r.value) << " iter=" << r.iterations << ';';
    }
    throw NumericError(trace.str());
  }

  const double alpha = chosen->best[0], beta = chosen->best[1];
  const auto prof = profile(ex, lx, alpha, beta);
  FitResult out;
  out.alpha = alpha;
  out.beta = beta;
  out.mu = prof.mu;
  out.sigma = prof.sigma;
  out.neg_log_lik = prof.neg_log_lik;
  out.converged = true;
  out.n_exceed = ex.size();
  out.residuals.reserve(ex.size());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    out.residuals.push_back((ex[i].y - alpha * ex[i].x) * std::exp(-beta * lx[i]));
  }
  return out;
}

void to_json(nlohmann::json& j, const MisfitReport& r) {
  j = nlohmann::json{{"n_exceed", r.n_exceed},
                     {"residual_x_correlation", r.residual_x_correlation},
                     {"log_deviation_slope_log_x", r.log_deviation_slope_log_x},
                     {"log_deviation_slope_x", r.log_deviation_slope_x},
                     {"identity_deviation_slope_log_x", r.identity_deviation_slope_log_x},
                     {"identity_deviation_slope_se", r.identity_deviation_slope_se},
                     {"ks_split_statistic", r.ks_split_statistic},
                     {"ks_split_pvalue", r.ks_split_pvalue},
                     {"degenerate", r.degenerate},
                     {"flags", r.flags},
                     {"in_canonical_family", r.in_canonical_family}};
}

MisfitReport residual_diagnostics(const FitResult& fit, std::span<const LaplacePair> samples) {
  if (!fit.converged) throw InvalidArgument("residual_diagnostics: fit did not converge");
  if (fit.n_exceed < 4 || fit.residuals.size() != fit.n_exceed || samples.size() < fit.n_exceed) {
    throw InvalidArgument("residual_diagnostics: fit and samples do not match");
  }
  const auto all = sorted_pairs(samples);
  const std::span<const LaplacePair> ex(all.end() - static_cast<std::ptrdiff_t>(fit.n_exceed),
                                        all.end());
  const auto lx = logs_of_x(ex);
  const std::size_t n = ex.size();

  MisfitReport rep;
  rep.n_exceed = n;
  std::vector<double> xs(n), ys_identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = ex[i].x;
    ys_identity[i] = ex[i].y - ex[i].x;
  }
  rep.degenerate = stats::variance(fit.residuals) == 0.0 || fit.sigma <= kSigmaFloor;
  rep.residual_x_correlation = stats::pearson(fit.residuals, xs);

  std::vector<double> kept_x, kept_lx, log_dev;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::exp(fit.beta * lx[i]) * (fit.residuals[i] - fit.mu);
    if (d != 0.0 && std::isfinite(d)) {
      kept_x.push_back(xs[i]);
      kept_lx.push_back(lx[i]);
      log_dev.push_back(std::log(std::abs(d)));
    }
  }
  if (kept_x.size() >= 2) {
    rep.log_deviation_slope_log_x = stats::ols_slope(kept_lx, log_dev);
    rep.log_deviation_slope_x = stats::ols_slope(kept_x, log_dev);
  }
  const double c = stats::mean(ys_identity);
  for (double& v : ys_identity) v = std::abs(v - c);
  const auto line = stats::ols(lx, ys_identity);
  rep.identity_deviation_slope_log_x = line.slope;
  rep.identity_deviation_slope_se = line.slope_se;

  const std::size_t half = n / 2;
  const std::span<const double> r(fit.residuals);
  rep.ks_split_statistic = stats::ks_two_sample(r.first(half), r.subspan(half));
  rep.ks_split_pvalue = stats::ks_two_sample_pvalue(rep.ks_split_statistic, half, n - half);

  if (rep.degenerate) rep.flags.emplace_back("degenerate_residuals");
  if (rep.log_deviation_slope_x < -0.5) rep.flags.emplace_back("exponential_scale");
  if (rep.identity_deviation_slope_log_x > 3.0 * rep.identity_deviation_slope_se) {
    rep.flags.emplace_back("scale_grows_with_log_x");
  }
  if (rep.ks_split_pvalue < 0.01) rep.flags.emplace_back("residual_distribution_shifts_with_x");
  // Canonical data with alpha < 1 also trips the identity-norming slope, so
  // only the scale and split tests decide membership.
  rep.in_canonical_family = std::none_of(rep.flags.begin(), rep.flags.end(), [](const auto& f) {
    return f == "exponential_scale" || f == "residual_distribution_shifts_with_x";
  });
  return rep;
}

void write_residuals_csv(std::ostream& out, const FitResult& fit) {
  out << "residual\n";
  for (double r : fit.residuals) out << format_double(r) << '\n';
}

}  // namespace cevm
