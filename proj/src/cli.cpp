#include "cevm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cevm/csv.hpp"
#include "cevm/errors.hpp"
#include "cevm/fit.hpp"
#include "cevm/limits.hpp"
#include "cevm/margins.hpp"

namespace cevm::cli {
namespace {

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommandNames{{
    {Command::Simulate, "simulate"},
    {Command::Transform, "transform"},
    {Command::Verify, "verify"},
    {Command::Fit, "fit"},
    {Command::Oscillation, "oscillation"},
    {Command::Chi, "chi"},
    {Command::Report, "report"},
}};

// Sample sizes used inside `report`, apart from the scatter data which use n.
constexpr std::size_t kReportTailDraws = 200000;
constexpr std::size_t kReportOscillationDraws = 500000;
constexpr std::size_t kReportFitDraws = 100000;

// The automatic oscillation grid stops where about this many exceedances are
// expected.
constexpr double kOscillationExpectedTail = 400.0;
constexpr std::size_t kOscillationGridPoints = 40;
constexpr double kOscillationGridStart = -0.5;

std::vector<double> parse_number_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError(field, "empty list element");
    const std::string trimmed = item.substr(b, e - b + 1);
    double v = 0.0;
    const auto res = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
    if (res.ec != std::errc{} || res.ptr != trimmed.data() + trimmed.size()) {
      throw ConfigError(field, "'" + trimmed + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(field, "empty list");
  return out;
}

ZGridSpec parse_zgrid(const std::vector<double>& v) {
  if (v.size() != 3) throw ConfigError("zgrid", "expected min,max,points");
  if (!(v[2] >= 0.0) || v[2] != std::floor(v[2]) || v[2] > 1e7) {
    throw ConfigError("zgrid", "points must be a whole number");
  }
  return {v[0], v[1], static_cast<std::size_t>(v[2])};
}

std::string header_line(const RunConfig& cfg) {
  return "# cevm " + std::string(to_string(cfg.command)) + " example=" +
         std::string(to_string(cfg.example)) + " seed=" + std::to_string(cfg.seed) +
         " config_hash=" + config_hash(cfg);
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  const auto path = std::filesystem::path(cfg.output_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("out", "cannot write " + path.string());
  return out;
}

std::ofstream open_csv(const RunConfig& cfg, const std::string& name) {
  auto out = open_output(cfg, name);
  out << header_line(cfg) << '\n';
  return out;
}

void write_json(const RunConfig& cfg, const std::string& name, const nlohmann::json& payload) {
  nlohmann::json doc = {{"header", header_line(cfg)},
                        {"config_hash", config_hash(cfg)},
                        {"seed", cfg.seed}};
  doc["result"] = payload;
  auto out = open_output(cfg, name);
  out << doc.dump(2) << '\n';
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string stem(const RunConfig& cfg, std::string_view what) {
  return std::string(what) + "_" + std::string(to_string(cfg.example));
}

std::vector<double> z_grid(const RunConfig& cfg) {
  return linear_grid(cfg.z_grid.min, cfg.z_grid.max, cfg.z_grid.points);
}

// Two numeric columns; a non-numeric first row is taken as a header.
std::vector<std::pair<double, double>> read_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("input", "cannot read " + path);
  std::vector<std::pair<double, double>> out;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    double a = 0.0, b = 0.0;
    bool ok = comma != std::string::npos;
    if (ok) {
      const auto r1 = std::from_chars(line.data(), line.data() + comma, a);
      const auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), b);
      ok = r1.ec == std::errc{} && r1.ptr == line.data() + comma && r2.ec == std::errc{} &&
           r2.ptr == line.data() + line.size();
    }
    if (!ok) {
      if (!seen_row) {
        seen_row = true;
        continue;
      }
      throw ConfigError("input", path + " line " + std::to_string(line_no) +
                                     ": expected two numbers");
    }
    seen_row = true;
    out.emplace_back(a, b);
  }
  return out;
}

void run_simulate(const RunConfig& cfg, std::ostream& log) {
  const auto samples = sample(cfg.example, cfg.n_or_default(), cfg.seed);
  auto out = open_csv(cfg, stem(cfg, "samples") + ".csv");
  write_samples_csv(out, cfg.example, samples);
  std::map<int, std::size_t> counts;
  for (const auto& s : samples) ++counts[s.b_label];
  log << "simulate " << to_string(cfg.example) << ": " << samples.size() << " draws; labels";
  for (const auto& [b, c] : counts) log << ' ' << b << ':' << c;
  log << '\n';
}

void run_transform(const RunConfig& cfg, std::ostream& log) {
  std::vector<double> xs, ys, xl, yl;
  if (cfg.input) {
    for (const auto& [a, b] : read_pairs(*cfg.input)) {
      xs.push_back(a);
      ys.push_back(b);
    }
  } else {
    for (const auto& s : sample(cfg.example, cfg.n_or_default(), cfg.seed)) {
      const auto l = to_laplace_pair(cfg.example, s);
      xs.push_back(s.x);
      ys.push_back(s.y);
      xl.push_back(l.x);
      yl.push_back(l.y);
    }
  }
  const auto xr = empirical_to_laplace(xs);
  const auto yr = empirical_to_laplace(ys);
  const std::string name = cfg.input ? "transform_input.csv" : stem(cfg, "transform") + ".csv";
  auto out = open_csv(cfg, name);
  out << (cfg.input ? "x,y,x_laplace_rank,y_laplace_rank\n"
                    : "x,y,x_laplace,y_laplace,x_laplace_rank,y_laplace_rank\n");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << format_double(xs[i]) << ',' << format_double(ys[i]) << ',';
    if (!cfg.input) out << format_double(xl[i]) << ',' << format_double(yl[i]) << ',';
    out << format_double(xr[i]) << ',' << format_double(yr[i]) << '\n';
  }
  log << "transform: " << xs.size() << " pairs -> " << name << '\n';
}

std::vector<LaplacePair> verify_samples(const RunConfig& cfg) {
  const auto thresholds = cfg.thresholds_or_default();
  if (cfg.tail) {
    return to_laplace(cfg.example,
                      sample_tail(cfg.example, cfg.n_or_default(), thresholds.front(), cfg.seed));
  }
  return to_laplace(cfg.example, sample(cfg.example, cfg.n_or_default(), cfg.seed));
}

nlohmann::json law_json(const LimitLaw& law) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : law.atoms) atoms.push_back({{"location", number(a.location)}, {"weight", a.weight}});
  return {{"convergent", law.convergent}, {"atoms", atoms}};
}

nlohmann::json verify_summary(ExampleId id, std::span<const LaplacePair> samples,
                              std::span<const double> thresholds) {
  const auto law = limit_law_for(id);
  nlohmann::json j = {{"example", to_string(id)}, {"limit_law", law_json(law)}};
  if (!law.convergent) return j;
  const auto rep = convergence_report(samples, norming_for(id), law, thresholds);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"t", r.t},
                    {"n_exceed", r.n_exceed},
                    {"sup_distance", r.sup_distance},
                    {"mc_sigma", r.mc_sigma}});
  }
  const auto esc = mass_at_minus_infinity(id, samples, thresholds);
  j["convergence"] = rows;
  j["non_increasing"] = rep.non_increasing;
  j["mass_at_minus_infinity"] = {{"z_low", esc.z_low},
                                 {"g_at_z_low", esc.g_at_z_low},
                                 {"estimate", esc.estimate},
                                 {"trend", esc.trend}};
  return j;
}

void run_verify(const RunConfig& cfg, std::ostream& log) {
  const auto samples = verify_samples(cfg);
  const auto thresholds = cfg.thresholds_or_default();
  const auto grid = z_grid(cfg);
  const auto norming = norming_for(cfg.example);
  auto out = open_csv(cfg, stem(cfg, "conditional") + ".csv");
  out << "t,z,g_hat\n";
  for (double t : thresholds) {
    const auto est = empirical_conditional(samples, norming, t, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out << format_double(t) << ',' << format_double(grid[k]) << ','
          << format_double(est.g_hat[k]) << '\n';
    }
  }
  const auto summary = verify_summary(cfg.example, samples, thresholds);
  write_json(cfg, stem(cfg, "verify") + ".json", summary);
  log << "verify " << to_string(cfg.example) << ": " << samples.size() << " draws";
  if (summary.contains("convergence")) {
    for (const auto& r : summary["convergence"]) {
      log << "; t=" << format_double(r["t"].get<double>())
          << " sup=" << format_double(r["sup_distance"].get<double>());
    }
  } else {
    log << "; no limit law (non-convergent)";
  }
  log << '\n';
}

std::vector<LaplacePair> fit_input(const RunConfig& cfg, std::size_t n) {
  if (cfg.input) {
    std::vector<LaplacePair> out;
    for (const auto& [a, b] : read_pairs(*cfg.input)) out.push_back({a, b});
    return out;
  }
  return to_laplace(cfg.example, sample(cfg.example, n, cfg.seed));
}

nlohmann::json fit_payload(const FitResult& fit, const MisfitReport& diag) {
  return {{"fit", fit}, {"diagnostics", diag}};
}

void run_fit(const RunConfig& cfg, std::ostream& log) {
  const auto data = fit_input(cfg, cfg.n_or_default());
  const auto fit = fit_canonical(data);
  const auto diag = residual_diagnostics(fit, data);
  const std::string base = cfg.input ? "fit_input" : stem(cfg, "fit");
  write_json(cfg, base + ".json", fit_payload(fit, diag));
  auto out = open_csv(cfg, base + "_residuals.csv");
  write_residuals_csv(out, fit);
  log << "fit: alpha=" << format_double(fit.alpha) << " beta=" << format_double(fit.beta)
      << " n_exceed=" << fit.n_exceed
      << (diag.in_canonical_family ? " (no misfit flags)" : " (misfit flagged)") << '\n';
}

std::vector<double> oscillation_grid(const RunConfig& cfg, std::size_t n) {
  if (cfg.thresholds) return *cfg.thresholds;
  const double hi = std::log(static_cast<double>(n) / kOscillationExpectedTail);
  if (!(hi > kOscillationGridStart + 1.0)) {
    throw ConfigError("n", "too small for an oscillation grid");
  }
  return linear_grid(kOscillationGridStart, hi, kOscillationGridPoints);
}

void write_oscillation(const RunConfig& cfg, std::size_t n, const std::string& name) {
  const auto samples = sample(ExampleId::Ex4_4, n, cfg.seed);
  const auto grid = oscillation_grid(cfg, n);
  const auto points = oscillation_diagnostic(samples, grid);
  auto out = open_csv(cfg, name);
  out << "t,empirical,theoretical,n_exceed,sigma\n";
  for (const auto& p : points) {
    out << format_double(p.t) << ',' << format_double(p.empirical) << ','
        << format_double(p.theoretical) << ',' << p.n_exceed << ',' << format_double(p.sigma)
        << '\n';
  }
}

void run_oscillation(const RunConfig& cfg, std::ostream& log) {
  write_oscillation(cfg, cfg.n_or_default(), "oscillation.csv");
  log << "oscillation: " << cfg.n_or_default() << " Ex4_4 draws -> oscillation.csv\n";
}

void run_chi(const RunConfig& cfg, std::ostream& log) {
  const std::size_t n = cfg.n_or_default();
  std::vector<double> xs, ys;
  std::vector<UniformPair> exact;
  xs.reserve(n);
  ys.reserve(n);
  exact.reserve(n);
  for_each_draw(cfg.example, n, cfg.seed, [&](const LabeledSample& s) {
    xs.push_back(s.x);
    ys.push_back(s.y);
    exact.push_back({marginal_cdf_x(cfg.example, s.x), marginal_cdf_y(cfg.example, s.y)});
  });
  const auto ranked = to_uniform_ranks(xs, ys);
  auto out = open_csv(cfg, stem(cfg, "chi") + ".csv");
  out << "p,chi_exact,chi_rank\n";
  for (double p : cfg.p_levels) {
    const double ce = chi_estimator(exact, p);
    const double cr = chi_estimator(ranked, p);
    out << format_double(p) << ',' << format_double(ce) << ',' << format_double(cr) << '\n';
    log << "chi " << to_string(cfg.example) << " p=" << format_double(p)
        << ": exact=" << format_double(ce) << " rank=" << format_double(cr) << '\n';
  }
}

void run_report(const RunConfig& cfg, std::ostream& log) {
  const auto thresholds = cfg.thresholds_or_default();
  nlohmann::json index = nlohmann::json::object();
  for (ExampleId id : kAllExamples) {
    RunConfig sub = cfg;
    sub.example = id;
    const auto scatter = sample(id, cfg.n_or_default(), cfg.seed);
    {
      auto out = open_csv(sub, stem(sub, "scatter") + ".csv");
      write_samples_csv(out, id, scatter);
    }
    nlohmann::json entry;
    if (limit_law_for(id).convergent) {
      const auto tail = to_laplace(id, sample_tail(id, kReportTailDraws, thresholds.front(), cfg.seed));
      const auto rep = convergence_report(tail, norming_for(id), limit_law_for(id), thresholds);
      auto out = open_csv(sub, stem(sub, "convergence") + ".csv");
      out << "t,n_exceed,sup_distance,mc_sigma\n";
      for (const auto& r : rep.rows) {
        out << format_double(r.t) << ',' << r.n_exceed << ',' << format_double(r.sup_distance)
            << ',' << format_double(r.mc_sigma) << '\n';
      }
      entry["sup_distance_at_last_threshold"] = rep.rows.back().sup_distance;
      entry["non_increasing"] = rep.non_increasing;
    }
    const auto data = to_laplace(id, sample(id, kReportFitDraws, cfg.seed));
    const auto fit = fit_canonical(data);
    const auto diag = residual_diagnostics(fit, data);
    write_json(sub, stem(sub, "fit") + ".json", fit_payload(fit, diag));
    entry["alpha"] = fit.alpha;
    entry["beta"] = fit.beta;
    entry["misfit_flags"] = diag.flags;
    index[std::string(to_string(id))] = entry;
    log << "report " << to_string(id) << ": alpha=" << format_double(fit.alpha)
        << " beta=" << format_double(fit.beta) << '\n';
  }
  RunConfig osc = cfg;
  osc.example = ExampleId::Ex4_4;
  osc.thresholds.reset();
  write_oscillation(osc, kReportOscillationDraws, "oscillation_ex4_4.csv");
  write_json(cfg, "report.json", index);
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "unknown";
}

Command parse_command(std::string_view text) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (name == text) return cmd;
  }
  throw ConfigError("command", "unknown command '" + std::string(text) + "'");
}

std::size_t RunConfig::n_or_default() const {
  if (n) return *n;
  switch (command) {
    case Command::Simulate:
    case Command::Transform:
    case Command::Report:
      return 2000;
    case Command::Verify:
    case Command::Chi:
      return 1000000;
    case Command::Fit:
      return 100000;
    case Command::Oscillation:
      return 2000000;
  }
  return 2000;
}

std::vector<double> RunConfig::thresholds_or_default() const {
  return thresholds ? *thresholds : std::vector<double>{4.0, 6.0, 8.0};
}

void validate(const RunConfig& cfg) {
  if (cfg.n && *cfg.n < 1) throw ConfigError("n", "must be at least 1");
  if (cfg.thresholds) {
    const auto& t = *cfg.thresholds;
    if (t.empty()) throw ConfigError("thresholds", "must not be empty");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!std::isfinite(t[i])) throw ConfigError("thresholds", "must be finite");
      if (i > 0 && !(t[i] > t[i - 1])) throw ConfigError("thresholds", "must be strictly increasing");
    }
  }
  if (cfg.z_grid.points < 2) throw ConfigError("zgrid", "needs at least 2 points");
  if (!std::isfinite(cfg.z_grid.min) || !std::isfinite(cfg.z_grid.max) ||
      !(cfg.z_grid.min < cfg.z_grid.max)) {
    throw ConfigError("zgrid", "needs finite min < max");
  }
  if (cfg.p_levels.empty()) throw ConfigError("p", "must not be empty");
  for (double p : cfg.p_levels) {
    if (!(p > 0.5 && p < 1.0)) throw ConfigError("p", "levels must lie in (0.5, 1)");
  }
  if (cfg.output_dir.empty()) throw ConfigError("out", "must not be empty");
  if (cfg.tail && cfg.command != Command::Verify) {
    throw ConfigError("tail", "only applies to verify");
  }
  if (cfg.input && cfg.command != Command::Fit && cfg.command != Command::Transform) {
    throw ConfigError("input", "only applies to fit and transform");
  }
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = {{"command", to_string(cfg.command)},
                      {"example", to_string(cfg.example)},
                      {"n", cfg.n_or_default()},
                      {"seed", cfg.seed},
                      {"thresholds", cfg.thresholds_or_default()},
                      {"zgrid", {cfg.z_grid.min, cfg.z_grid.max, cfg.z_grid.points}},
                      {"tail", cfg.tail},
                      {"p", cfg.p_levels}};
  if (cfg.input) j["input"] = *cfg.input;
  return j;
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : config_json(cfg).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  auto field = [&](const char* key, auto&& fn) {
    if (!j.contains(key)) return;
    try {
      fn(j.at(key));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(key, e.what());
    } catch (const cevm::Error& e) {
      throw ConfigError(key, e.what());
    }
  };
  field("command", [&](const auto& v) { cfg.command = parse_command(v.template get<std::string>()); });
  field("example", [&](const auto& v) { cfg.example = parse_example_id(v.template get<std::string>()); });
  field("n", [&](const auto& v) {
    if (!v.is_number_unsigned()) throw ConfigError("n", "must be a positive integer");
    cfg.n = v.template get<std::size_t>();
  });
  field("seed", [&](const auto& v) { cfg.seed = v.template get<std::uint64_t>(); });
  field("thresholds", [&](const auto& v) { cfg.thresholds = v.template get<std::vector<double>>(); });
  field("zgrid", [&](const auto& v) { cfg.z_grid = parse_zgrid(v.template get<std::vector<double>>()); });
  field("out", [&](const auto& v) { cfg.output_dir = v.template get<std::string>(); });
  field("tail", [&](const auto& v) { cfg.tail = v.template get<bool>(); });
  field("input", [&](const auto& v) { cfg.input = v.template get<std::string>(); });
  field("p", [&](const auto& v) { cfg.p_levels = v.template get<std::vector<double>>(); });
}

void run(const RunConfig& config, std::ostream& log) {
  validate(config);
  RunConfig cfg = config;
  if (cfg.command == Command::Oscillation) cfg.example = ExampleId::Ex4_4;
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw ConfigError("out", "cannot create " + cfg.output_dir + ": " + ec.message());
  switch (cfg.command) {
    case Command::Simulate: return run_simulate(cfg, log);
    case Command::Transform: return run_transform(cfg, log);
    case Command::Verify: return run_verify(cfg, log);
    case Command::Fit: return run_fit(cfg, log);
    case Command::Oscillation: return run_oscillation(cfg, log);
    case Command::Chi: return run_chi(cfg, log);
    case Command::Report: return run_report(cfg, log);
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laplace-margin conditional extremes counterexamples"};
  std::string command, example, thresholds, zgrid, out_dir, config_path, input, p_levels;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool tail = false;
  std::vector<std::string> names;
  for (const auto& c : kCommandNames) names.emplace_back(c.second);
  app.add_option("command", command, "simulate | transform | verify | fit | oscillation | chi | report")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--example", example, "ex2_3, ex3_1, ex3_2, ex4_2 or ex4_4");
  app.add_option("--n", n, "number of draws");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--thresholds", thresholds, "comma-separated Laplace-scale thresholds");
  app.add_option("--zgrid", zgrid, "min,max,points");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--config", config_path, "JSON config; flags override it");
  app.add_option("--input", input, "two-column CSV for fit (Laplace scale) or transform");
  app.add_option("--p", p_levels, "comma-separated chi levels");
  app.add_flag("--tail", tail, "verify: sample conditionally on X_L above the first threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw ConfigError("config", "cannot read " + config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", e.what());
      }
      apply_json(cfg, j);
    }
    cfg.command = parse_command(command);
    if (app.count("--example")) {
      try {
        cfg.example = parse_example_id(example);
      } catch (const cevm::Error& e) {
        throw ConfigError("example", e.what());
      }
    }
    if (app.count("--n")) cfg.n = n;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--thresholds")) cfg.thresholds = parse_number_list(thresholds, "thresholds");
    if (app.count("--zgrid")) cfg.z_grid = parse_zgrid(parse_number_list(zgrid, "zgrid"));
    if (app.count("--out")) cfg.output_dir = out_dir;
    if (app.count("--input")) cfg.input = input;
    if (app.count("--p")) cfg.p_levels = parse_number_list(p_levels, "p");
    if (tail) cfg.tail = true;
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "cevm: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    run(cfg, out);
  } catch (const ConfigError& e) {
    err << "cevm: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "cevm " << to_string(cfg.command) << ": invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cevm::Error& e) {
    err << "cevm " << to_string(cfg.command) << ": " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace cevm::cli
