#include "cevm/margins.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cevm/errors.hpp"

namespace cevm {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + ": non-finite input");
  }
}

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(what) + ": probability " + std::to_string(p) +
                      " outside (0, 1)");
  }
}

}  // namespace

std::string_view to_string(MarginKind kind) {
  switch (kind) {
    case MarginKind::StandardLaplace:
      return "laplace";
    case MarginKind::StandardPareto:
      return "pareto";
    case MarginKind::Gumbel:
      return "gumbel";
    case MarginKind::Uniform01:
      return "uniform";
  }
  return "unknown";
}

double laplace_cdf(double x) {
  require_finite(x, "laplace_cdf");
  return x <= 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
}

double laplace_survival(double x) {
  require_finite(x, "laplace_survival");
  return x <= 0.0 ? 1.0 - 0.5 * std::exp(x) : 0.5 * std::exp(-x);
}

double laplace_quantile(double p) {
  require_open_unit(p, "laplace_quantile");
  return p <= 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
}

double laplace_quantile_upper(double q) {
  require_open_unit(q, "laplace_quantile_upper");
  return q <= 0.5 ? -std::log(2.0 * q) : std::log(2.0 * (1.0 - q));
}

double laplace_from_split(double lower, double upper) {
  if (!(lower > 0.0 && upper > 0.0)) {
    throw DomainError("laplace_from_split: probability at the edge of the support");
  }
  // F <= 1/2 exactly when lower <= upper; the smaller half has full precision.
  return lower <= upper ? std::log(2.0 * lower) : -std::log(2.0 * upper);
}

double pareto_cdf(double x) {
  require_finite(x, "pareto_cdf");
  return x <= 1.0 ? 0.0 : 1.0 - 1.0 / x;
}

double pareto_quantile(double p) {
  require_open_unit(p, "pareto_quantile");
  return 1.0 / (1.0 - p);
}

double gumbel_cdf(double x) {
  require_finite(x, "gumbel_cdf");
  return std::exp(-std::exp(-x));
}

double gumbel_quantile(double p) {
  require_open_unit(p, "gumbel_quantile");
  return -std::log(-std::log(p));
}

double uniform_cdf(double x) {
  require_finite(x, "uniform_cdf");
  return std::clamp(x, 0.0, 1.0);
}

double uniform_quantile(double p) {
  require_open_unit(p, "uniform_quantile");
  return p;
}

double margin_cdf(MarginKind kind, double x) {
  switch (kind) {
    case MarginKind::StandardLaplace:
      return laplace_cdf(x);
    case MarginKind::StandardPareto:
      return pareto_cdf(x);
    case MarginKind::Gumbel:
      return gumbel_cdf(x);
    case MarginKind::Uniform01:
      return uniform_cdf(x);
  }
  throw InvalidArgument("margin_cdf: unknown margin");
}

double margin_quantile(MarginKind kind, double p) {
  switch (kind) {
    case MarginKind::StandardLaplace:
      return laplace_quantile(p);
    case MarginKind::StandardPareto:
      return pareto_quantile(p);
    case MarginKind::Gumbel:
      return gumbel_quantile(p);
    case MarginKind::Uniform01:
      return uniform_quantile(p);
  }
  throw InvalidArgument("margin_quantile: unknown margin");
}

TransformedValue transform_margin(double value, MarginKind from, MarginKind to) {
  double out;
  if (from == MarginKind::StandardPareto && to == MarginKind::StandardLaplace) {
    out = pareto_to_laplace(value);
  } else if (from == to) {
    require_finite(value, "transform_margin");
    out = value;
  } else {
    out = margin_quantile(to, margin_cdf(from, value));
  }
  return {value, out, from, to};
}

double pareto_to_laplace(double x) {
  require_finite(x, "pareto_to_laplace");
  if (!(x > 1.0)) {
    throw DomainError("pareto_to_laplace: x = " + std::to_string(x) +
                      " outside the Pareto support (1, inf)");
  }
  // 1/x = 1 - e^{x_L}/2 on x <= 2, 1/x = e^{-x_L}/2 above; both give 0 at x = 2.
  if (x <= 2.0) {
    return std::log(2.0 * (x - 1.0) / x);
  }
  return std::log(0.5 * x);
}

double laplace_to_pareto(double x_laplace) {
  require_finite(x_laplace, "laplace_to_pareto");
  if (x_laplace <= 0.0) {
    return 1.0 / (1.0 - 0.5 * std::exp(x_laplace));
  }
  return 2.0 * std::exp(x_laplace);
}

std::vector<std::size_t> ranks_by_index(std::span<const double> sample) {
  std::vector<std::size_t> order(sample.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sample[a] < sample[b]; });
  std::vector<std::size_t> rank(sample.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = r + 1;
  }
  return rank;
}

std::vector<double> empirical_to_laplace(std::span<const double> sample) {
  if (sample.size() < 2) {
    throw InsufficientData("empirical_to_laplace: need at least two observations",
                           sample.size(), 2);
  }
  for (double v : sample) require_finite(v, "empirical_to_laplace");
  const auto rank = ranks_by_index(sample);
  const double denom = static_cast<double>(sample.size()) + 1.0;
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out[i] = laplace_quantile(static_cast<double>(rank[i]) / denom);
  }
  return out;
}

}  // namespace cevm
