#include "rotor/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "core/text.hpp"
#include "rotor/core.hpp"

namespace rotor::app {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_count(const std::string& s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::vector<double>> to_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = to_double(trim(item));
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::string list_text(const std::vector<double>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (double v : values) parts.push_back(format_double(v));
  return join(parts, ",");
}

bool needs_positive_rates(Mode mode) {
  return mode == Mode::semiclassical || mode == Mode::caustics || mode == Mode::nonlinear;
}

}  // namespace

Mode parse_mode(const std::string& name) {
  static const std::map<std::string, Mode> modes{
      {"evolve", Mode::evolve},       {"classical", Mode::classical},
      {"semiclassical", Mode::semiclassical}, {"caustics", Mode::caustics},
      {"scaling", Mode::scaling},     {"nonlinear", Mode::nonlinear},
      {"sweep", Mode::sweep}};
  auto it = modes.find(name);
  if (it == modes.end()) throw ConfigError({"mode: unknown mode '" + name + "'"});
  return it->second;
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::evolve: return "evolve";
    case Mode::classical: return "classical";
    case Mode::semiclassical: return "semiclassical";
    case Mode::caustics: return "caustics";
    case Mode::scaling: return "scaling";
    case Mode::nonlinear: return "nonlinear";
    case Mode::sweep: return "sweep";
  }
  return "unknown";
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(ErrorKind::validation, "invalid configuration: " + join(problems, "; ")),
      problems_(std::move(problems)) {}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "K",          "delta",      "g",           "basis_size",      "kicks",
      "output_dir", "workers",    "K_list",      "delta_list",      "refit_prefactor",
      "map",        "trajectories", "fold_grid", "section_seeds",   "theta0_list",
      "k_grid",     "m_max",      "variant",     "substeps",        "field_format"};
  return keys;
}

std::vector<double> default_k_grid() {
  std::vector<double> grid;
  for (int i = 45; i >= 1; --i) grid.push_back(-0.02 * i);
  for (int i = 1; i <= 45; ++i) grid.push_back(0.02 * i);
  return grid;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  std::vector<std::string> problems;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": empty key");
      continue;
    }
    if (!out.emplace(key, value).second) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return out;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

RunConfig parse_config(Mode mode, const KeyValues& file_values, const KeyValues& overrides) {
  KeyValues values = file_values;
  for (const auto& [k, v] : overrides) values[k] = v;

  RunConfig cfg;
  cfg.mode = mode;
  std::vector<std::string> problems;
  const auto& keys = known_keys();

  for (const auto& [key, value] : values) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      problems.push_back(key + ": unknown key");
    }
  }

  auto get = [&](const char* key) -> const std::string* {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  auto read_double = [&](const char* key, double& dst) {
    if (const auto* s = get(key)) {
      if (auto v = to_double(*s)) dst = *v;
      else problems.push_back(std::string(key) + ": expected a finite number, got '" + *s + "'");
      return true;
    }
    return false;
  };
  auto read_count = [&](const char* key, std::size_t& dst) {
    if (const auto* s = get(key)) {
      if (auto v = to_count(*s)) dst = *v;
      else problems.push_back(std::string(key) + ": expected a non-negative integer, got '" + *s + "'");
    }
  };
  auto read_list = [&](const char* key, std::vector<double>& dst) {
    if (const auto* s = get(key)) {
      if (auto v = to_list(*s)) dst = *v;
      else problems.push_back(std::string(key) + ": expected a comma-separated list of numbers");
      return true;
    }
    return false;
  };
  auto read_choice = [&](const char* key, std::string& dst, std::initializer_list<const char*> allowed) {
    if (const auto* s = get(key)) {
      if (std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return *s == a; })) {
        dst = *s;
      } else {
        std::vector<std::string> opts(allowed.begin(), allowed.end());
        problems.push_back(std::string(key) + ": expected one of " + join(opts, "|") + ", got '" + *s + "'");
      }
    }
  };

  const bool has_K = read_double("K", cfg.K);
  const bool has_delta = read_double("delta", cfg.delta);
  read_double("g", cfg.g);
  read_count("basis_size", cfg.basis_size);
  if (const auto* s = get("kicks")) {
    if (*s != "auto") {
      if (auto v = to_count(*s)) cfg.kicks = *v;
      else problems.push_back("kicks: expected a non-negative integer or 'auto', got '" + *s + "'");
    }
  }
  if (const auto* s = get("output_dir")) cfg.output_dir = *s;
  read_count("workers", cfg.workers);
  const bool has_K_list = read_list("K_list", cfg.K_list);
  const bool has_delta_list = read_list("delta_list", cfg.delta_list);
  if (const auto* s = get("refit_prefactor")) {
    if (*s == "true" || *s == "1") cfg.refit_prefactor = true;
    else if (*s == "false" || *s == "0") cfg.refit_prefactor = false;
    else problems.push_back("refit_prefactor: expected true or false, got '" + *s + "'");
  }
  read_choice("map", cfg.map, {"standard", "eps_classical"});
  read_count("trajectories", cfg.trajectories);
  read_count("fold_grid", cfg.fold_grid);
  read_count("section_seeds", cfg.section_seeds);
  read_list("theta0_list", cfg.theta0_list);
  const bool has_k_grid = read_list("k_grid", cfg.k_grid);
  if (const auto* s = get("m_max")) {
    if (auto v = to_count(*s); v && *v <= 16) cfg.m_max = static_cast<unsigned>(*v);
    else problems.push_back("m_max: expected an integer in [0, 16], got '" + *s + "'");
  }
  read_choice("variant", cfg.variant, {"continuous", "kicked"});
  read_count("substeps", cfg.substeps);
  read_choice("field_format", cfg.field_format, {"binary", "csv", "none"});

  // Semantic checks.
  const bool grid_mode = mode == Mode::scaling || mode == Mode::sweep;
  if (!grid_mode) {
    if (!has_K) problems.push_back("K: required for mode " + std::string(to_string(mode)));
    if (!has_delta) problems.push_back("delta: required for mode " + std::string(to_string(mode)));
  }
  if (has_K && !(cfg.K >= 0.0)) problems.push_back("K: must be >= 0 (got " + format_double(cfg.K) + ")");
  if (has_delta && !(cfg.delta >= 0.0)) {
    problems.push_back("delta: must be >= 0 (got " + format_double(cfg.delta) + ")");
  }
  if (needs_positive_rates(mode)) {
    if (has_K && cfg.K == 0.0) problems.push_back("K: must be > 0 for mode " + std::string(to_string(mode)));
    if (has_delta && cfg.delta == 0.0) {
      problems.push_back("delta: must be > 0 for mode " + std::string(to_string(mode)));
    }
  }
  if (cfg.basis_size < 2 || cfg.basis_size % 2 != 0) {
    problems.push_back("basis_size: must be even and >= 2 (got " + std::to_string(cfg.basis_size) + ")");
  }
  if (cfg.workers < 1) problems.push_back("workers: must be >= 1");
  if ((mode == Mode::evolve || mode == Mode::classical) && !cfg.kicks) {
    problems.push_back("kicks: required for mode " + std::string(to_string(mode)));
  }
  if (grid_mode) {
    if (mode == Mode::scaling) {
      if (!has_K_list) cfg.K_list = has_K ? std::vector<double>{cfg.K} : std::vector<double>{0.1, 0.5, 1.0};
      if (!has_delta_list) {
        cfg.delta_list = has_delta ? std::vector<double>{cfg.delta} : std::vector<double>{1e-4, 5e-4, 1e-3};
      }
    } else {
      if (!has_K_list) {
        if (has_K) cfg.K_list = {cfg.K};
        else problems.push_back("K_list: required for mode sweep (or give K)");
      }
      if (!has_delta_list) {
        if (has_delta) cfg.delta_list = {cfg.delta};
        else problems.push_back("delta_list: required for mode sweep (or give delta)");
      }
    }
    for (double v : cfg.K_list) {
      if (!(v > 0.0)) problems.push_back("K_list: entries must be > 0 (got " + format_double(v) + ")");
    }
    for (double v : cfg.delta_list) {
      if (!(v > 0.0)) problems.push_back("delta_list: entries must be > 0 (got " + format_double(v) + ")");
    }
  }
  if (cfg.fold_grid != 0 && cfg.fold_grid < 3) problems.push_back("fold_grid: must be 0 or >= 3");
  for (double t : cfg.theta0_list) {
    if (!(t > 0.0 && t < kTwoPi)) {
      problems.push_back("theta0_list: entries must lie in (0, 2 pi) (got " + format_double(t) + ")");
    }
  }
  if (!has_k_grid) cfg.k_grid = default_k_grid();
  for (double k : cfg.k_grid) {
    if (!(std::abs(k) < 1.0) || k == 0.0) {
      problems.push_back("k_grid: entries must satisfy 0 < |k| < 1 (got " + format_double(k) + ")");
    }
  }
  if (cfg.substeps < 1) problems.push_back("substeps: must be >= 1");

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

KeyValues RunConfig::echo() const {
  KeyValues kv;
  kv["mode"] = to_string(mode);
  kv["K"] = format_double(K);
  kv["delta"] = format_double(delta);
  kv["g"] = format_double(g);
  kv["basis_size"] = std::to_string(basis_size);
  kv["kicks"] = kicks ? std::to_string(*kicks) : "auto";
  kv["output_dir"] = output_dir;
  kv["workers"] = std::to_string(workers);
  kv["K_list"] = list_text(K_list);
  kv["delta_list"] = list_text(delta_list);
  kv["refit_prefactor"] = refit_prefactor ? "true" : "false";
  kv["map"] = map;
  kv["trajectories"] = std::to_string(trajectories);
  kv["fold_grid"] = std::to_string(fold_grid);
  kv["section_seeds"] = std::to_string(section_seeds);
  kv["theta0_list"] = list_text(theta0_list);
  kv["k_grid"] = list_text(k_grid);
  kv["m_max"] = std::to_string(m_max);
  kv["variant"] = variant;
  kv["substeps"] = std::to_string(substeps);
  kv["field_format"] = field_format;
  return kv;
}

std::vector<SweepJob> enumerate_jobs(const RunConfig& config) {
  std::vector<SweepJob> jobs;
  for (double K : config.K_list) {
    for (double delta : config.delta_list) {
      jobs.push_back({jobs.size(), K, delta});
    }
  }
  return jobs;
}

}  // namespace rotor::app
