#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace cevm {

enum class MarginKind { StandardLaplace, StandardPareto, Gumbel, Uniform01 };

std::string_view to_string(MarginKind kind);

/// A value before and after a probability-integral transform between two
/// margins. Produced by transform_margin().
struct TransformedValue {
  double original;
  double transformed;
  MarginKind margin_from;
  MarginKind margin_to;
};

// Standard Laplace: F(x) = e^x / 2 for x <= 0, 1 - e^{-x} / 2 otherwise.
double laplace_cdf(double x);
double laplace_survival(double x);
double laplace_quantile(double p);

/// Laplace quantile of 1 - q, evaluated without forming 1 - q. Keeps full
/// relative precision when the upper-tail probability q is tiny.
double laplace_quantile_upper(double q);

/// Maps a split probability (F, 1 - F) onto the Laplace scale, using
/// whichever half is accurate. Callers that can evaluate both the CDF and
/// the survival function in closed form should go through this.
double laplace_from_split(double lower, double upper);

// Standard Pareto on (1, inf): F(x) = 1 - 1/x.
double pareto_cdf(double x);
double pareto_quantile(double p);

// Standard Gumbel: F(x) = exp(-exp(-x)).
double gumbel_cdf(double x);
double gumbel_quantile(double p);

double uniform_cdf(double x);
double uniform_quantile(double p);

double margin_cdf(MarginKind kind, double x);
double margin_quantile(MarginKind kind, double p);

/// Probability-integral transform from one standard margin to another.
TransformedValue transform_margin(double value, MarginKind from, MarginKind to);

/// Exact change of variables from a standard Pareto value x > 1 to the
/// Laplace scale. x <= 2 maps to the non-positive half line.
double pareto_to_laplace(double x);

/// Inverse of pareto_to_laplace.
double laplace_to_pareto(double x_laplace);

/// Rank-based transform to Laplace margins with plotting positions r/(n+1).
/// Ties are broken by input index, so the output is a permutation of
/// laplace_quantile(1/(n+1)), ..., laplace_quantile(n/(n+1)).
std::vector<double> empirical_to_laplace(std::span<const double> sample);

/// Ranks 1..n with ties broken by index.
std::vector<std::size_t> ranks_by_index(std::span<const double> sample);

}  // namespace cevm
