#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cevm::stats {

/// sup_z |F_n(z) - F(z)| for a sample against a CDF. When F has atoms pass
/// its left limit as cdf_left; otherwise the CDF is taken as continuous.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left = {});

/// Two-sample sup distance between empirical CDFs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic Kolmogorov survival P(sqrt(n) D > lambda).
double kolmogorov_survival(double lambda);

/// Asymptotic p-value for the two-sample statistic with sizes n and m.
double ks_two_sample_pvalue(double d, std::size_t n, std::size_t m);

/// 1% asymptotic critical value of sqrt(n) D.
inline constexpr double kKs1PercentCritical = 1.63;

double mean(std::span<const double> v);
double variance(std::span<const double> v);  // population (divide by n)
double pearson(std::span<const double> a, std::span<const double> b);

/// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

struct OlsLine {
  double intercept;
  double slope;
  double slope_se;  // needs at least three points, else NaN
};

OlsLine ols(std::span<const double> x, std::span<const double> y);

/// Type-7 sample quantile.
double quantile(std::vector<double> v, double p);

}  // namespace cevm::stats
