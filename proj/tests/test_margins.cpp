#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cevm/errors.hpp"
#include "cevm/margins.hpp"
#include "cevm/stats.hpp"

using namespace cevm;

namespace {
constexpr double kLog2 = std::numbers::ln2;
}

TEST(LaplaceCdf, KnownValues) {
  EXPECT_DOUBLE_EQ(laplace_cdf(0.0), 0.5);
  EXPECT_NEAR(laplace_cdf(kLog2), 0.75, 1e-15);
  EXPECT_NEAR(laplace_cdf(-kLog2), 0.25, 1e-15);
}

TEST(LaplaceCdf, RejectsNonFinite) {
  EXPECT_THROW(laplace_cdf(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
  EXPECT_THROW(laplace_cdf(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST(LaplaceCdf, ContinuousAndIncreasingAroundZero) {
  EXPECT_NEAR(laplace_cdf(-1e-12), laplace_cdf(1e-12), 1e-11);
  double prev = 0.0;
  for (double x = -30.0; x <= 30.0; x += 0.01) {
    const double f = laplace_cdf(x);
    EXPECT_GT(f, prev);
    prev = f;
  }
}

TEST(LaplaceQuantile, KnownValues) {
  EXPECT_DOUBLE_EQ(laplace_quantile(0.5), 0.0);
  EXPECT_NEAR(laplace_quantile(0.75), kLog2, 1e-15);
  EXPECT_NEAR(laplace_quantile(0.25), -kLog2, 1e-15);
}

TEST(LaplaceQuantile, DomainErrors) {
  EXPECT_THROW(laplace_quantile(0.0), DomainError);
  EXPECT_THROW(laplace_quantile(1.0), DomainError);
  EXPECT_THROW(laplace_quantile(-0.1), DomainError);
}

TEST(LaplaceQuantile, RoundTripAndAntisymmetry) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    double p = u(rng);
    if (p == 0.0) continue;
    EXPECT_LT(std::abs(laplace_cdf(laplace_quantile(p)) - p), 1e-10);
    EXPECT_NEAR(laplace_quantile(1.0 - p), -laplace_quantile(p), 1e-9);
  }
}

TEST(LaplaceQuantile, UpperTailKeepsPrecision) {
  // 1 - 1e-20 is 1 in double precision; the upper form still resolves it.
  EXPECT_NEAR(laplace_quantile_upper(1e-20), -std::log(2e-20), 1e-12);
  EXPECT_NEAR(laplace_from_split(1.0 - 1e-20, 1e-20), -std::log(2e-20), 1e-12);
  EXPECT_NEAR(laplace_from_split(1e-20, 1.0), std::log(2e-20), 1e-12);
}

TEST(ParetoToLaplace, KnownValues) {
  EXPECT_DOUBLE_EQ(pareto_to_laplace(2.0), 0.0);
  EXPECT_NEAR(pareto_to_laplace(4.0), kLog2, 1e-15);
  EXPECT_NEAR(pareto_to_laplace(4.0 / 3.0), -kLog2, 1e-15);
}

TEST(ParetoToLaplace, OutsideSupport) {
  EXPECT_THROW(pareto_to_laplace(1.0), DomainError);
  EXPECT_THROW(pareto_to_laplace(0.5), DomainError);
}

TEST(ParetoToLaplace, AgreesWithQuantileOfCdf) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lx(0.0, std::log(1e6));
  for (int i = 0; i < 10000; ++i) {
    const double x = 1.0 + std::exp(lx(rng));
    if (x >= 1e6 + 1.0) continue;
    EXPECT_NEAR(pareto_to_laplace(x), laplace_quantile(1.0 - 1.0 / x), 1e-10) << x;
  }
}

TEST(ParetoToLaplace, InverseRoundTrip) {
  // For x_L < 0 the Pareto value is 1 + e^{x_L}/2, so storing it costs
  // about eps * 2e^{-x_L} in x_L.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (double xl = -20.0; xl <= 30.0; xl += 0.37) {
    const double tol = 1e-9 * (1.0 + std::abs(xl)) + (xl < 0.0 ? 4.0 * eps * std::exp(-xl) : 0.0);
    EXPECT_NEAR(pareto_to_laplace(laplace_to_pareto(xl)), xl, tol);
  }
}

TEST(ParetoToLaplace, KsAgainstLaplace) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 100000;
  std::vector<double> xl;
  xl.reserve(n);
  while (xl.size() < n) {
    const double v = u(rng);
    if (v > 0.0) xl.push_back(pareto_to_laplace(1.0 / v));
  }
  const double d = stats::ks_statistic(xl, [](double x) { return laplace_cdf(x); });
  EXPECT_LT(d, stats::kKs1PercentCritical / std::sqrt(static_cast<double>(n)));
}

TEST(Transforms, MonotoneOnSortedRandomGrids) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(2000);
  for (auto& v : p) v = std::max(u(rng), 1e-300);
  std::sort(p.begin(), p.end());
  for (MarginKind from : {MarginKind::StandardLaplace, MarginKind::StandardPareto,
                          MarginKind::Gumbel, MarginKind::Uniform01}) {
    for (MarginKind to : {MarginKind::StandardLaplace, MarginKind::StandardPareto,
                          MarginKind::Gumbel, MarginKind::Uniform01}) {
      double prev = -std::numeric_limits<double>::infinity();
      for (double q : p) {
        if (q >= 1.0) continue;
        const auto tv = transform_margin(margin_quantile(from, q), from, to);
        EXPECT_GE(tv.transformed, prev) << to_string(from) << "->" << to_string(to);
        EXPECT_EQ(tv.margin_from, from);
        EXPECT_EQ(tv.margin_to, to);
        prev = tv.transformed;
      }
    }
  }
}

TEST(Transforms, ParetoToLaplaceMatchesGenericPath) {
  for (double x : {1.5, 2.0, 3.0, 10.0, 1e4}) {
    EXPECT_NEAR(transform_margin(x, MarginKind::StandardPareto, MarginKind::StandardLaplace)
                    .transformed,
                pareto_to_laplace(x), 1e-12);
  }
}

TEST(OtherMargins, GumbelAndUniform) {
  EXPECT_NEAR(gumbel_cdf(0.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(gumbel_quantile(std::exp(-1.0)), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(uniform_cdf(0.3), 0.3);
  EXPECT_DOUBLE_EQ(uniform_quantile(0.3), 0.3);
  EXPECT_DOUBLE_EQ(pareto_cdf(2.0), 0.5);
  EXPECT_DOUBLE_EQ(pareto_quantile(0.5), 2.0);
}

TEST(EmpiricalToLaplace, TwoPoints) {
  const std::vector<double> in{5.0, 1.0};
  const auto out = empirical_to_laplace(in);
  ASSERT_EQ(out.size(), 2u);
  // F = 2/3 and 1/3.
  EXPECT_NEAR(out[0], std::log(1.5), 1e-12);
  EXPECT_NEAR(out[1], -std::log(1.5), 1e-12);
}

TEST(EmpiricalToLaplace, ThreePoints) {
  const std::vector<double> in{1.0, 2.0, 3.0};
  const auto out = empirical_to_laplace(in);
  // Plotting positions 1/4, 2/4, 3/4: log(2 * 1/4) = -log 2, 0, log 2.
  EXPECT_NEAR(out[0], -kLog2, 1e-12);
  EXPECT_NEAR(out[1], 0.0, 1e-15);
  EXPECT_NEAR(out[2], kLog2, 1e-12);
}

TEST(EmpiricalToLaplace, PreservesOrderAndBreaksTiesByIndex) {
  const std::vector<double> in{3.0, 1.0, 3.0, 2.0, 1.0};
  const auto ranks = ranks_by_index(in);
  EXPECT_EQ(ranks, (std::vector<std::size_t>{4, 1, 5, 3, 2}));
  const auto out = empirical_to_laplace(in);
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_NEAR(out[i], laplace_quantile(static_cast<double>(ranks[i]) / 6.0), 1e-15);
  }
}

TEST(EmpiricalToLaplace, Errors) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(empirical_to_laplace(one), InsufficientData);
  const std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(empirical_to_laplace(bad), InvalidArgument);
}
