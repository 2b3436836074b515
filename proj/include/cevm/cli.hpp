#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cevm/examples.hpp"

namespace cevm::cli {

enum class Command { Simulate, Transform, Verify, Fit, Oscillation, Chi, Report };

std::string_view to_string(Command c);
Command parse_command(std::string_view text);

struct ZGridSpec {
  double min = -10.0;
  double max = 10.0;
  std::size_t points = 512;
};

struct RunConfig {
  Command command = Command::Simulate;
  ExampleId example = ExampleId::Ex2_3;
  std::optional<std::size_t> n;  // per-command default when empty
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> thresholds;
  ZGridSpec z_grid;
  std::string output_dir = ".";
  bool tail = false;  // verify: sample conditionally on X_L > first threshold
  std::optional<std::string> input;
  std::vector<double> p_levels{0.9, 0.99, 0.999};

  std::size_t n_or_default() const;
  std::vector<double> thresholds_or_default() const;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Raised for any config problem; `field` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("invalid " + field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

void validate(const RunConfig& cfg);

/// Settings that determine outputs, i.e. everything except output_dir.
nlohmann::json config_json(const RunConfig& cfg);

/// FNV-1a 64 of config_json(cfg).dump(), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Applies the keys present in `j` on top of `cfg`.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Runs one command, writing files under cfg.output_dir and a short summary
/// to `log`. Library errors propagate.
void run(const RunConfig& cfg, std::ostream& log);

/// Full front end: parse flags (and --config), validate, run, map errors to
/// exit codes.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cevm::cli
