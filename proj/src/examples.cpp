#include "cevm/examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cevm/csv.hpp"
#include "cevm/errors.hpp"
#include "cevm/margins.hpp"
#include "cevm/rng.hpp"
#include "cevm/root_find.hpp"

namespace cevm {
namespace {

constexpr double kLog2 = std::numbers::ln2;
// log(2/3), the phase offset shared by h1 and h2.
const double kLogTwoThirds = std::log(2.0 / 3.0);

// (F, 1 - F) evaluated separately so the smaller one keeps full precision.
struct Split {
  double lower;
  double upper;
};

[[noreturn]] void bad_label(ExampleId id, int b) {
  throw DomainError("example " + std::string(to_string(id)) + ": unsupported label b = " +
                    std::to_string(b));
}

// 1/x and log x for the Pareto value that sits at x_L on the Laplace scale.
double pareto_reciprocal(double x_laplace) {
  return x_laplace > 0.0 ? 0.5 * std::exp(-x_laplace) : 1.0 - 0.5 * std::exp(x_laplace);
}

double pareto_log(double x_laplace) {
  return x_laplace > 0.0 ? kLog2 + x_laplace : -std::log1p(-0.5 * std::exp(x_laplace));
}

// Ex3_2 lower half: F(w - 1) = w (1 - log w) / 2 with w in (0, 1].
double ex32_half_cdf(double w) { return 0.5 * w * (1.0 - std::log(w)); }

// Solves w (1 - log w) = q for w in (0, 1], working in t = log w.
double ex32_solve(double q) {
  const double log_q = std::log(q);
  // e^t (1 - t) lies in [e^t, e^t (1 - t)], so t <= log q, and starting one
  // log-factor lower is enough; widen until bracketed to be safe.
  double lo = log_q - std::log1p(-log_q) - 1.0;
  const auto h = [](double t) { return std::exp(t) * (1.0 - t); };
  for (int i = 0; i < 64 && h(lo) > q; ++i) lo = 2.0 * lo - 1.0;
  const double t = bisect_increasing(h, q, lo, std::min(0.0, log_q), 0.0,
                                     "ex3_2 marginal inversion");
  return std::exp(t);
}

Split split_x(ExampleId id, double x) {
  if (id != ExampleId::Ex4_4) {
    if (x <= 1.0) return {0.0, 1.0};
    return {1.0 - 1.0 / x, 1.0 / x};
  }
  if (x <= 0.0) return {0.0, 1.0};
  if (x <= 1.0) return {0.25 * x, 1.0 - 0.25 * x};
  if (x >= 2.0) return {1.0, 0.0};
  return {0.25 * (3.0 * x - 2.0), 0.75 * (2.0 - x)};
}

Split ex44_split_from_gap(double w) {
  // y = 2 - w in (1, 2): F = y/2 - w^2/4, 1 - F = w (2 + w) / 4.
  return {1.0 - 0.5 * w - 0.25 * w * w, 0.25 * w * (2.0 + w)};
}

Split split_y(ExampleId id, double y) {
  switch (id) {
    case ExampleId::Ex2_3:
      if (y < 1.0) return {0.0, 1.0};
      if (y >= 2.0) return {1.0, 0.0};
      return {0.5 * y, 0.5 * (2.0 - y)};
    case ExampleId::Ex3_1:
      if (y <= 1.0) return {0.0, 1.0};
      if (y >= 3.0) return {1.0, 0.0};
      return {0.5 * (y - 1.0), 0.5 * (3.0 - y)};
    case ExampleId::Ex3_2: {
      if (y <= -1.0) return {0.0, 1.0};
      if (y >= 1.0) return {1.0, 0.0};
      if (y <= 0.0) {
        const double lower = ex32_half_cdf(y + 1.0);
        return {lower, 1.0 - lower};
      }
      const double upper = ex32_half_cdf(1.0 - y);
      return {1.0 - upper, upper};
    }
    case ExampleId::Ex4_2: {
      if (y < -1.0) {
        const double lower = 1.0 / osc::g(-y);
        return {lower, 1.0 - lower};
      }
      if (y <= 1.0) return {0.5, 0.5};
      const double upper = 0.5 / y;
      return {1.0 - upper, upper};
    }
    case ExampleId::Ex4_4:
      if (y <= 0.0) return {0.0, 1.0};
      if (y <= 1.0) return {0.25 * y, 1.0 - 0.25 * y};
      if (y >= 2.0) return {1.0, 0.0};
      return ex44_split_from_gap(2.0 - y);
  }
  throw InvalidArgument("unknown example");
}

double laplace_of(const Split& s, ExampleId id, const char* coordinate, double value) {
  if (!(s.lower > 0.0 && s.upper > 0.0)) {
    throw DomainError("example " + std::string(to_string(id)) + ": " + coordinate + " = " +
                      format_double(value) + " has no Laplace image (edge of support)");
  }
  return laplace_from_split(s.lower, s.upper);
}

LabeledSample build(ExampleId id, double z, int k, double u) {
  switch (id) {
    case ExampleId::Ex2_3:
      return {z, k == 1 ? 1.0 : 2.0 - 1.0 / z, k, std::nullopt};
    case ExampleId::Ex3_1: {
      const int b = k == 0 ? -1 : 1;
      return {z, 2.0 - b / z, b, std::nullopt};
    }
    case ExampleId::Ex3_2: {
      const int b = k == 0 ? -1 : 1;
      return {z, b * (1.0 - u / z), b, u};
    }
    case ExampleId::Ex4_2:
      return {z, k == 1 ? z : -osc::g_inv(2.0 * z), k, std::nullopt};
    case ExampleId::Ex4_4: {
      const int b = k + 1;
      switch (b) {
        case 1:
          return {2.0 - osc::psi_c(0.5, z), 2.0 - 1.0 / z, b, std::nullopt};
        case 2:
          return {2.0 - osc::psi_c(-0.5, z), 2.0 - 1.0 / std::sqrt(z), b, std::nullopt};
        case 3:
          return {1.0 - 1.0 / z, 2.0 - 1.0 / z, b, std::nullopt};
        default:
          return {2.0 - 1.0 / z, 1.0 - 1.0 / z, b, std::nullopt};
      }
    }
  }
  throw InvalidArgument("unknown example");
}

int label_count(ExampleId id) { return id == ExampleId::Ex4_4 ? 4 : 2; }

LabeledSample draw(ExampleId id, Stream& stream) {
  const double z = 1.0 / stream.uniform();
  const int k = stream.index(label_count(id));
  const double u = id == ExampleId::Ex3_2 ? stream.uniform() : 0.0;
  return build(id, z, k, u);
}

// Tail streams use a disjoint index range so they never replay sample().
constexpr std::uint64_t kTailStreamOffset = std::uint64_t{1} << 40;

// 2 - x at the Ex4_4 threshold x_L, for x_L > -log 2.
double ex44_gap_from_laplace(double x_laplace) {
  if (x_laplace > 0.0) return (2.0 / 3.0) * std::exp(-x_laplace);
  return 4.0 / 3.0 - (2.0 / 3.0) * std::exp(x_laplace);
}

}  // namespace

std::string_view to_string(ExampleId id) {
  switch (id) {
    case ExampleId::Ex2_3:
      return "ex2_3";
    case ExampleId::Ex3_1:
      return "ex3_1";
    case ExampleId::Ex3_2:
      return "ex3_2";
    case ExampleId::Ex4_2:
      return "ex4_2";
    case ExampleId::Ex4_4:
      return "ex4_4";
  }
  return "unknown";
}

ExampleId parse_example_id(std::string_view text) {
  std::string norm;
  for (char c : text) {
    if (c == '.' || c == '-') c = '_';
    norm += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (norm.rfind("ex", 0) != 0) norm = "ex" + norm;
  for (ExampleId id : kAllExamples) {
    if (norm == to_string(id)) return id;
  }
  throw InvalidArgument("unknown example id '" + std::string(text) +
                        "' (expected one of ex2_3, ex3_1, ex3_2, ex4_2, ex4_4)");
}

namespace osc {

double g(double x) { return x * (2.0 + std::sin(std::log(x))); }

double g_inv(double v) {
  if (!(v >= 2.0) || !std::isfinite(v)) {
    throw DomainError("g_inv: argument " + format_double(v) + " outside [2, inf)");
  }
  // x <= g(x) <= 3x.
  return bisect_increasing(g, v, std::max(1.0, v / 3.0), v, 0.0, "g_inv");
}

double g_c(double c, double u) { return u * (1.0 + c * std::sin(std::log(u))); }

double g_c_inv(double c, double v) {
  if (!(std::abs(c) < std::numbers::sqrt2 / 2.0)) {
    throw DomainError("g_c_inv: |c| must be below 1/sqrt(2)");
  }
  if (!(v > 0.0 && v <= 1.0)) {
    throw DomainError("g_c_inv: argument " + format_double(v) + " outside (0, 1]");
  }
  // u (1 - |c|) <= g_c(u) <= u (1 + |c|), and g_c(1) = 1.
  const double a = std::abs(c);
  const double lo = v / (1.0 + a);
  const double hi = std::min(1.0, v / (1.0 - a));
  return bisect_increasing([c](double u) { return g_c(c, u); }, v, lo, hi, 0.0, "g_c_inv");
}

double psi_c(double c, double z) {
  if (!(z >= 1.0)) throw DomainError("psi_c: z must be >= 1");
  return g_c_inv(c, 1.0 / z);
}

double h1(double x_laplace) { return (2.0 + std::sin(kLogTwoThirds - x_laplace)) / 3.0; }

double h2(double x_laplace) {
  return std::sqrt(2.0 / 3.0 - std::sin(kLogTwoThirds - x_laplace) / 3.0);
}

}  // namespace osc

void for_each_draw(ExampleId id, std::size_t n, std::uint64_t seed,
                   const std::function<void(const LabeledSample&)>& fn) {
  if (n < 1) throw InvalidArgument("sample: n must be at least 1");
  for (std::size_t start = 0, chunk = 0; start < n; start += kDrawsPerStream, ++chunk) {
    Stream stream(seed, chunk);
    const std::size_t end = std::min(n, start + kDrawsPerStream);
    for (std::size_t i = start; i < end; ++i) fn(draw(id, stream));
  }
}

std::vector<LabeledSample> sample(ExampleId id, std::size_t n, std::uint64_t seed) {
  std::vector<LabeledSample> out;
  out.reserve(n);
  for_each_draw(id, n, seed, [&](const LabeledSample& s) { out.push_back(s); });
  return out;
}

std::vector<LabeledSample> sample_tail(ExampleId id, std::size_t n, double x_laplace_min,
                                       std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("sample_tail: n must be at least 1");
  if (!std::isfinite(x_laplace_min)) throw InvalidArgument("sample_tail: non-finite threshold");
  std::vector<LabeledSample> out;
  out.reserve(n);

  if (id != ExampleId::Ex4_4) {
    // X_P | X_P > x0 is x0 times a standard Pareto.
    const double x0 = laplace_to_pareto(x_laplace_min);
    for (std::size_t start = 0, chunk = 0; start < n; start += kDrawsPerStream, ++chunk) {
      Stream stream(seed, kTailStreamOffset + chunk);
      const std::size_t end = std::min(n, start + kDrawsPerStream);
      for (std::size_t i = start; i < end; ++i) {
        const double z = x0 / stream.uniform();
        const int k = stream.index(2);
        const double u = id == ExampleId::Ex3_2 ? stream.uniform() : 0.0;
        out.push_back(build(id, z, k, u));
      }
    }
    return out;
  }

  if (!(x_laplace_min > -kLog2)) {
    throw DomainError("sample_tail: Ex4_4 threshold must exceed -log 2");
  }
  // P(X > t | B = 1, 2, 4) = g_{1/2}(s), g_{-1/2}(s), s with s = 2 - t, and
  // given B the exceedance is a rescaled Pareto draw of Z.
  const double s = ex44_gap_from_laplace(x_laplace_min);
  const double w1 = osc::g_c(0.5, s);
  const double w2 = osc::g_c(-0.5, s);
  const double total = w1 + w2 + s;
  for (std::size_t start = 0, chunk = 0; start < n; start += kDrawsPerStream, ++chunk) {
    Stream stream(seed, kTailStreamOffset + chunk);
    const std::size_t end = std::min(n, start + kDrawsPerStream);
    for (std::size_t i = start; i < end; ++i) {
      const double v = stream.uniform();
      const double pick = stream.uniform() * total;
      int k;
      double scale;
      if (pick < w1) {
        k = 0;
        scale = w1;
      } else if (pick < w1 + w2) {
        k = 1;
        scale = w2;
      } else {
        k = 3;
        scale = s;
      }
      out.push_back(build(id, 1.0 / (scale * v), k, 0.0));
    }
  }
  return out;
}

double marginal_cdf_x(ExampleId id, double x) {
  if (std::isnan(x)) throw InvalidArgument("marginal_cdf_x: NaN input");
  return split_x(id, x).lower;
}

double marginal_cdf_y(ExampleId id, double y) {
  if (std::isnan(y)) throw InvalidArgument("marginal_cdf_y: NaN input");
  return split_y(id, y).lower;
}

double marginal_quantile_x(ExampleId id, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("marginal_quantile_x: p outside (0, 1)");
  if (id != ExampleId::Ex4_4) return 1.0 / (1.0 - p);
  return p <= 0.25 ? 4.0 * p : (4.0 * p + 2.0) / 3.0;
}

double marginal_quantile_y(ExampleId id, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("marginal_quantile_y: p outside (0, 1)");
  switch (id) {
    case ExampleId::Ex2_3:
      return p <= 0.5 ? 1.0 : 2.0 * p;
    case ExampleId::Ex3_1:
      return 1.0 + 2.0 * p;
    case ExampleId::Ex3_2:
      if (p <= 0.5) return ex32_solve(2.0 * p) - 1.0;
      return 1.0 - ex32_solve(2.0 * (1.0 - p));
    case ExampleId::Ex4_2:
      if (p < 0.5) return -osc::g_inv(1.0 / p);
      if (p == 0.5) return -1.0;
      return 0.5 / (1.0 - p);
    case ExampleId::Ex4_4:
      return p <= 0.25 ? 4.0 * p : 3.0 - std::sqrt(5.0 - 4.0 * p);
  }
  throw InvalidArgument("unknown example");
}

LaplacePair to_laplace_pair(ExampleId id, const LabeledSample& s) {
  return {laplace_of(split_x(id, s.x), id, "x", s.x),
          laplace_of(split_y(id, s.y), id, "y", s.y)};
}

std::vector<LaplacePair> to_laplace(ExampleId id, const std::vector<LabeledSample>& samples) {
  std::vector<LaplacePair> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(to_laplace_pair(id, s));
  return out;
}

double exact_y_laplace(ExampleId id, double x_laplace, int b, std::optional<double> u) {
  if (!std::isfinite(x_laplace)) throw InvalidArgument("exact_y_laplace: non-finite x_L");
  switch (id) {
    case ExampleId::Ex2_3:
      if (b == 1) return 0.0;
      if (b == 0) return pareto_log(x_laplace);
      break;
    case ExampleId::Ex3_1: {
      const double r = pareto_reciprocal(x_laplace);
      if (b == 1) return std::log1p(-r);
      if (b == -1) return -std::log1p(-r);
      break;
    }
    case ExampleId::Ex3_2: {
      if (b != 1 && b != -1) break;
      if (!u || !(*u > 0.0 && *u < 1.0)) {
        throw DomainError("exact_y_laplace: Ex3_2 needs u in (0, 1)");
      }
      // w = u/x; F = w (1 - log w) / 2 on the B = -1 side, mirrored for B = 1.
      const double log_w = std::log(*u) - pareto_log(x_laplace);
      const double half = log_w + std::log1p(-log_w);
      return b == -1 ? half : -half;
    }
    case ExampleId::Ex4_2:
      if (b == 1) return pareto_log(x_laplace);
      if (b == 0) return -pareto_log(x_laplace);
      break;
    case ExampleId::Ex4_4: {
      const bool upper_part = x_laplace > -kLog2;
      if (b == 3) {
        if (upper_part) throw DomainError("exact_y_laplace: Ex4_4 b = 3 needs x_L <= -log 2");
        const Split sy = ex44_split_from_gap(1.0 - 2.0 * std::exp(x_laplace));
        return laplace_from_split(sy.lower, sy.upper);
      }
      if (b < 1 || b > 4) break;
      if (!upper_part) {
        throw DomainError("exact_y_laplace: Ex4_4 b = " + std::to_string(b) +
                          " needs x_L > -log 2");
      }
      const double gap = ex44_gap_from_laplace(x_laplace);
      if (b == 4) return std::log(0.5 * (1.0 - gap));
      const double w = b == 1 ? osc::g_c(0.5, gap) : std::sqrt(osc::g_c(-0.5, gap));
      const Split sy = ex44_split_from_gap(w);
      return laplace_from_split(sy.lower, sy.upper);
    }
  }
  bad_label(id, b);
}

double asymptotic_y_laplace(ExampleId id, double x_laplace, int b, std::optional<double> u) {
  (void)u;
  if (!std::isfinite(x_laplace)) throw InvalidArgument("asymptotic_y_laplace: non-finite x_L");
  const double x = x_laplace;
  switch (id) {
    case ExampleId::Ex2_3:
      if (b == 0) return kLog2 + x;
      if (b == 1) return 0.0;
      break;
    case ExampleId::Ex3_1:
      if (b == 1) return -0.5 * std::exp(-x);
      if (b == -1) return 0.5 * std::exp(-x);
      break;
    case ExampleId::Ex3_2:
      if (b != 1 && b != -1) break;
      if (!(x > 1.0)) throw DomainError("asymptotic_y_laplace: Ex3_2 needs x_L > 1");
      return b * (x - std::log(x));
    case ExampleId::Ex4_2:
      if (b == 1) return kLog2 + x;
      if (b == 0) return -(kLog2 + x);
      break;
    case ExampleId::Ex4_4:
      // Expansions of -log w - log(1 + w/2) with w = e^{-x} h1 and e^{-x/2} h2.
      if (b == 1) {
        const double h = osc::h1(x);
        return x - std::log(h) - 0.5 * std::exp(-x) * h;
      }
      if (b == 2) {
        const double h = osc::h2(x);
        return 0.5 * x - std::log(h) - 0.5 * std::exp(-0.5 * x) * h;
      }
      if (b == 4) return -kLog2;
      if (b == 3) {
        throw DomainError("asymptotic_y_laplace: Ex4_4 b = 3 never has large x_L");
      }
      break;
  }
  bad_label(id, b);
}

void write_samples_csv(std::ostream& out, ExampleId id,
                       const std::vector<LabeledSample>& samples) {
  out << "x,y,b,u,x_laplace,y_laplace\n";
  for (const auto& s : samples) {
    const LaplacePair l = to_laplace_pair(id, s);
    out << format_double(s.x) << ',' << format_double(s.y) << ',' << s.b_label << ','
        << (s.u_aux ? format_double(*s.u_aux) : std::string()) << ',' << format_double(l.x)
        << ',' << format_double(l.y) << '\n';
  }
}

}  // namespace cevm
