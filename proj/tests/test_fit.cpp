#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "cevm/errors.hpp"
#include "cevm/examples.hpp"
#include "cevm/fit.hpp"
#include "cevm/limits.hpp"

using namespace cevm;

namespace {

// Exponential x (the Laplace upper tail) with y = alpha x + x^beta (mu + sigma Z).
std::vector<LaplacePair> canonical_data(double alpha, double beta, double mu, double sigma,
                                        std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> ex(1.0);
  std::normal_distribution<double> z;
  std::vector<LaplacePair> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ex(rng);
    out.push_back({x, alpha * x + std::pow(x, beta) * (mu + sigma * z(rng))});
  }
  return out;
}

}  // namespace

TEST(FitConfig, Validation) {
  FitConfig ok;
  EXPECT_NO_THROW(ok.validate());
  FitConfig bad = ok;
  bad.beta_bounds = {-5.0, 1.0};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = ok;
  bad.alpha_bounds = {-1.5, 1.0};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = ok;
  bad.threshold_quantile = 1.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(Fit, RecoversCanonicalParameters) {
  FitConfig cfg;
  for (auto [a, b] : {std::pair{0.5, 0.3}, {0.9, -0.5}, {-0.3, 0.6}, {0.0, 0.0}}) {
    // 100000 draws above the 95% quantile leave 5000 exceedances.
    const auto data = canonical_data(a, b, 0.4, 0.25, 100000, 3);
    const auto fit = fit_canonical(data, cfg);
    EXPECT_EQ(fit.n_exceed, 5000u);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.alpha, a, 0.05);
    EXPECT_NEAR(fit.beta, b, 0.05);
    EXPECT_NEAR(fit.mu, 0.4, 0.1);
    EXPECT_NEAR(fit.sigma, 0.25, 0.05);
  }
}

TEST(Fit, ResidualsMatchReturnedParameters) {
  const auto data = canonical_data(0.5, 0.3, 0.4, 0.25, 20000, 4);
  const auto fit = fit_canonical(data);
  const auto ex = fit_exceedances(data, 0.95);
  ASSERT_EQ(ex.size(), fit.residuals.size());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    EXPECT_NEAR(fit.residuals[i], (ex[i].y - fit.alpha * ex[i].x) / std::pow(ex[i].x, fit.beta),
                1e-12 * (1.0 + std::abs(fit.residuals[i])));
  }
  EXPECT_GT(fit.sigma, 0.0);
}

TEST(Fit, OptimumBeatsEveryStart) {
  FitConfig cfg;
  const auto data = to_laplace(ExampleId::Ex3_2, sample(ExampleId::Ex3_2, 40000, 2));
  const auto fit = fit_canonical(data, cfg);
  const auto ex = fit_exceedances(data, cfg.threshold_quantile);
  for (const auto& s : multistart_grid(cfg)) {
    EXPECT_LE(fit.neg_log_lik, canonical_neg_log_lik(ex, s[0], s[1]));
  }
}

TEST(Fit, MultistartGridInsideBounds) {
  FitConfig cfg;
  const auto grid = multistart_grid(cfg);
  EXPECT_EQ(grid.size(), 25u);
  for (const auto& p : grid) {
    EXPECT_GE(p[0], cfg.alpha_bounds.first);
    EXPECT_LE(p[0], cfg.alpha_bounds.second);
    EXPECT_GE(p[1], cfg.beta_bounds.first);
    EXPECT_LE(p[1], cfg.beta_bounds.second);
  }
}

TEST(Fit, RespectsBounds) {
  // Data that would prefer alpha > 1 and beta > 1.
  std::vector<LaplacePair> data;
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> ex(1.0);
  std::normal_distribution<double> z;
  for (int i = 0; i < 20000; ++i) {
    const double x = ex(rng);
    data.push_back({x, 1.5 * x + x * x * 0.1 * z(rng)});
  }
  const auto fit = fit_canonical(data);
  EXPECT_LE(fit.alpha, 1.0);
  EXPECT_GE(fit.alpha, -1.0);
  EXPECT_LT(fit.beta, 1.0);
  EXPECT_GE(fit.beta, -5.0);
}

TEST(Fit, OrderInvariant) {
  auto data = to_laplace(ExampleId::Ex3_1, sample(ExampleId::Ex3_1, 30000, 5));
  const auto a = fit_canonical(data);
  std::mt19937_64 rng(9);
  std::shuffle(data.begin(), data.end(), rng);
  const auto b = fit_canonical(data);
  FitConfig cfg;
  EXPECT_NEAR(a.alpha, b.alpha, cfg.optimizer_tol);
  EXPECT_NEAR(a.beta, b.beta, cfg.optimizer_tol);
}

TEST(Fit, ExactLinearDataIsDegenerate) {
  std::vector<LaplacePair> data;
  for (int i = 1; i <= 4000; ++i) data.push_back({0.005 * i, 0.005 * i});
  const auto fit = fit_canonical(data);
  EXPECT_NEAR(fit.alpha, 1.0, 1e-6);
  EXPECT_LE(fit.sigma, 1e-8);
  EXPECT_GT(fit.sigma, 0.0);
  const auto diag = residual_diagnostics(fit, data);
  EXPECT_TRUE(diag.degenerate);
  EXPECT_NE(std::find(diag.flags.begin(), diag.flags.end(), "degenerate_residuals"),
            diag.flags.end());
}

TEST(Fit, TooFewExceedances) {
  const auto data = canonical_data(0.5, 0.3, 0.4, 0.25, 1000, 1);
  EXPECT_THROW(fit_canonical(data), InsufficientData);
}

TEST(Fit, NonPositiveExceedancesRejected) {
  std::vector<LaplacePair> data;
  for (int i = 0; i < 4000; ++i) data.push_back({-1.0 - i * 1e-3, 0.0});
  EXPECT_THROW(fit_canonical(data), DomainError);
}

TEST(Fit, JsonRoundTripUsesTypeFields) {
  const auto fit = fit_canonical(canonical_data(0.5, 0.3, 0.4, 0.25, 4000, 2));
  const nlohmann::json j = fit;
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::string>{"alpha", "beta", "converged", "mu", "n_exceed",
                                            "neg_log_lik", "residuals", "sigma"}));
  const auto back = j.get<FitResult>();
  EXPECT_EQ(back.alpha, fit.alpha);
  EXPECT_EQ(back.residuals, fit.residuals);
}

TEST(Fit, ResidualCsvColumn) {
  const auto fit = fit_canonical(canonical_data(0.5, 0.3, 0.4, 0.25, 4000, 2));
  std::ostringstream out;
  write_residuals_csv(out, fit);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("residual\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), fit.n_exceed + 1);
}

TEST(Diagnostics, CanonicalDataRaisesNoMisfit) {
  const auto data = canonical_data(0.5, 0.3, 0.4, 0.25, 100000, 8);
  const auto fit = fit_canonical(data);
  const auto d = residual_diagnostics(fit, data);
  EXPECT_TRUE(d.in_canonical_family);
  EXPECT_NEAR(d.residual_x_correlation, 0.0, 0.05);
  EXPECT_NEAR(d.log_deviation_slope_log_x, fit.beta, 0.2);
}

TEST(Diagnostics, Ex23ResidualsUncorrelatedWithX) {
  const auto data = to_laplace(ExampleId::Ex2_3, sample(ExampleId::Ex2_3, 100000, 11));
  const auto d = residual_diagnostics(fit_canonical(data), data);
  EXPECT_NEAR(d.residual_x_correlation, 0.0, 0.05);
}

TEST(Diagnostics, Ex31ExponentialScaleDetected) {
  const auto data = to_laplace(ExampleId::Ex3_1, sample(ExampleId::Ex3_1, 100000, 12));
  const auto fit = fit_canonical(data);
  const auto d = residual_diagnostics(fit, data);
  // The true scale is e^{-x}.
  EXPECT_NEAR(d.log_deviation_slope_x, -1.0, 0.15);
  EXPECT_FALSE(d.in_canonical_family);
  EXPECT_NE(std::find(d.flags.begin(), d.flags.end(), "exponential_scale"), d.flags.end());
}

TEST(Diagnostics, Ex32LogGrowthDetected) {
  const auto data = to_laplace(ExampleId::Ex3_2, sample(ExampleId::Ex3_2, 100000, 13));
  const auto d = residual_diagnostics(fit_canonical(data), data);
  EXPECT_GT(d.identity_deviation_slope_log_x, 0.0);
  EXPECT_FALSE(d.in_canonical_family);
  EXPECT_NE(std::find(d.flags.begin(), d.flags.end(), "scale_grows_with_log_x"), d.flags.end());
}

TEST(Diagnostics, RequiresConvergedFit) {
  FitResult r;
  EXPECT_THROW(residual_diagnostics(r, {}), InvalidArgument);
}
