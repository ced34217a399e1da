#pragma once

// Run configuration: a flat key = value text format with flag overrides.
//
//   # comment
//   K = 5
//   delta = 1e-4
//   kicks = 300
//   K_list = 0.1, 0.5, 1
//
// Unknown keys are rejected; every problem found in one pass is reported
// together in a single ConfigError.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rotor/error.hpp"

namespace rotor::app {

enum class Mode { evolve, classical, semiclassical, caustics, scaling, nonlinear, sweep };

Mode parse_mode(const std::string& name);
const char* to_string(Mode mode) noexcept;

/// Validation failure carrying every individual message.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Raw key/value pairs in insertion-independent (sorted) order.
using KeyValues = std::map<std::string, std::string>;

struct RunConfig {
  Mode mode = Mode::evolve;

  double K = 0.0;
  double delta = 0.0;
  double g = 0.0;
  std::size_t basis_size = 2048;
  std::optional<std::size_t> kicks;  ///< unset = mode default ("auto")
  std::string output_dir = ".";
  std::size_t workers = 1;

  // scaling / sweep grids (row-major: K outer, delta inner)
  std::vector<double> K_list;
  std::vector<double> delta_list;
  bool refit_prefactor = false;

  // classical
  std::string map = "standard";
  std::size_t trajectories = 5;
  std::size_t fold_grid = 512;
  std::size_t section_seeds = 0;

  // semiclassical
  std::vector<double> theta0_list{1.0, 2.0, 3.0, 4.0, 5.0};

  // caustics
  std::vector<double> k_grid;
  unsigned m_max = 0;

  // nonlinear
  std::string variant = "continuous";
  std::size_t substeps = 16;

  // evolve / nonlinear / sweep outputs
  std::string field_format = "binary";  ///< binary | csv | none

  /// Canonical key = value echo of every setting (for manifests).
  KeyValues echo() const;
};

/// Parses the text of a config file into key/value pairs. Throws
/// ConfigError listing malformed lines and duplicate keys.
KeyValues parse_key_values(const std::string& text);

/// Reads and parses a config file; Error(io) when unreadable.
KeyValues load_key_values(const std::string& path);

/// Builds and validates a RunConfig. overrides win over file values.
/// Throws ConfigError with all problems found.
RunConfig parse_config(Mode mode, const KeyValues& file_values, const KeyValues& overrides = {});

/// Every key accepted by parse_config.
const std::vector<std::string>& known_keys();

/// Default caustic-curve moduli: +-0.02, +-0.04, ..., +-0.9.
std::vector<double> default_k_grid();

/// (K, delta) jobs in row-major order.
struct SweepJob {
  std::size_t index = 0;
  double K = 0.0;
  double delta = 0.0;
};
std::vector<SweepJob> enumerate_jobs(const RunConfig& config);

}  // namespace rotor::app
