#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace cevm {

/// The five counterexample joint distributions.
enum class ExampleId { Ex2_3, Ex3_1, Ex3_2, Ex4_2, Ex4_4 };

inline constexpr ExampleId kAllExamples[] = {ExampleId::Ex2_3, ExampleId::Ex3_1,
                                             ExampleId::Ex3_2, ExampleId::Ex4_2,
                                             ExampleId::Ex4_4};

std::string_view to_string(ExampleId id);  // "ex2_3", ...
ExampleId parse_example_id(std::string_view text);

/// One draw on the original scale together with its latent mixture label.
///
///   Ex2_3: b in {0,1};       y = 1 if b = 1, else 2 - 1/x
///   Ex3_1: b in {-1,1};      y = 2 - b/x
///   Ex3_2: b in {-1,1};      y = b (1 - u/x), u uniform on (0,1)
///   Ex4_2: b in {0,1};       y = x if b = 1, else -g^{-1}(2x)
///   Ex4_4: b in {1,2,3,4};   (x, y) from the four-row mixture on (0,2)^2
///
/// For the first four x is the standard Pareto variable itself.
struct LabeledSample {
  double x;
  double y;
  int b_label;
  std::optional<double> u_aux;
};

struct LaplacePair {
  double x;
  double y;
};

/// The oscillating functions that drive Examples 4.2 and 4.4.
namespace osc {

/// g(x) = x (2 + sin log x) on x >= 1.
double g(double x);
/// Inverse of g on [2, inf).
double g_inv(double v);
/// g_c(u) = u (1 + c sin log u) on 0 < u <= 1, |c| < 1/sqrt(2).
double g_c(double c, double u);
/// Inverse of g_c on (0, 1].
double g_c_inv(double c, double v);
/// psi_c(z) = g_c^{-1}(1/z), z >= 1.
double psi_c(double c, double z);
/// h1(x) = (2 + sin(log(2/3) - x)) / 3, in [1/3, 1].
double h1(double x_laplace);
/// h2(x) = sqrt(2/3 - sin(log(2/3) - x) / 3), in [sqrt(1/3), 1].
double h2(double x_laplace);

}  // namespace osc

/// Number of draws generated from one RNG stream. Draw i comes from stream
/// i / kDrawsPerStream, so results do not depend on how work is split.
inline constexpr std::size_t kDrawsPerStream = std::size_t{1} << 16;

/// n independent draws, deterministic in (id, n, seed).
std::vector<LabeledSample> sample(ExampleId id, std::size_t n, std::uint64_t seed);

/// Streams the same draws as sample() to a callback without storing them.
void for_each_draw(ExampleId id, std::size_t n, std::uint64_t seed,
                   const std::function<void(const LabeledSample&)>& fn);

/// n exact draws from the law of (X, Y) conditioned on X_L > x_laplace_min.
/// Every draw is an exceedance, so threshold diagnostics far in the tail do
/// not need billions of unconditional draws. For Ex4_4 the threshold must lie
/// above -log 2, where only labels 1, 2 and 4 can exceed it.
std::vector<LabeledSample> sample_tail(ExampleId id, std::size_t n,
                                       double x_laplace_min, std::uint64_t seed);

// Closed-form marginals. Out-of-support arguments clamp to 0 or 1.
double marginal_cdf_x(ExampleId id, double x);
double marginal_cdf_y(ExampleId id, double y);

/// Generalized inverse inf{y : F_Y(y) >= p}; flat spots return their left end.
/// Ex3_2 has no closed form and is solved by bisection.
double marginal_quantile_y(ExampleId id, double p);
double marginal_quantile_x(ExampleId id, double p);

/// Marginal transform of one draw to standard Laplace margins.
LaplacePair to_laplace_pair(ExampleId id, const LabeledSample& s);
std::vector<LaplacePair> to_laplace(ExampleId id, const std::vector<LabeledSample>& samples);

/// y_L as an exact function of x_L on mixture branch b_label (and u for
/// Ex3_2), derived from the closed-form marginals. Used to check the
/// sampler + transform pipeline and the asymptotic expansions.
double exact_y_laplace(ExampleId id, double x_laplace, int b_label,
                       std::optional<double> u_aux = std::nullopt);

/// Leading-order large-x_L approximation of y_L on branch b_label.
/// Intended for x_L >= 3. Throws DomainError on branches whose x_L stays
/// bounded (Ex4_4, b = 3).
double asymptotic_y_laplace(ExampleId id, double x_laplace, int b_label,
                            std::optional<double> u_aux = std::nullopt);

/// Writes `x,y,b,u,x_laplace,y_laplace` rows in draw order.
void write_samples_csv(std::ostream& out, ExampleId id,
                       const std::vector<LabeledSample>& samples);

}  // namespace cevm
