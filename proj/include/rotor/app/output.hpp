#pragma once

// Run artifacts: CSV tables, raw little-endian float64 fields, FNV-1a
// checksums and the JSON run manifest.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotor/app/config.hpp"
#include "rotor/core.hpp"

namespace rotor::app {

struct Column {
  std::string name;
  std::string unit;
};

/// Numeric table. Integers are stored as doubles and print without a
/// fractional part; every value round-trips through the text exactly.
struct CsvTable {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::vector<double> column(std::size_t index) const;
};

/// One emitted file as listed in the manifest.
struct FileEntry {
  std::string name;  ///< relative to the output directory
  std::string format;  ///< csv | f64le
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Column> columns;
  std::string checksum;  ///< "fnv1a64:<16 hex digits>" of the file bytes
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string checksum_text(std::string_view bytes);

std::string format_csv(const CsvTable& table);
/// Parses text written by format_csv (header names only; units are lost).
CsvTable parse_csv(const std::string& text);

/// Writes dir/name and returns its manifest entry.
FileEntry write_csv(const std::string& dir, const std::string& name, const CsvTable& table);
CsvTable read_csv(const std::string& path);

/// Row-major |psi| field as little-endian float64, rows = kicks + 1.
FileEntry write_field(const std::string& dir, const std::string& name,
                      const AmplitudeField& field);
/// Throws Error(size_mismatch) when the file length disagrees with cols.
AmplitudeField read_field(const std::string& path, std::size_t cols);

/// Field as CSV with columns kick,node,theta,amplitude.
FileEntry write_field_csv(const std::string& dir, const std::string& name,
                          const AmplitudeField& field);

std::string read_file(const std::string& path);

struct Manifest {
  std::string mode;
  std::string version;
  KeyValues config;
  double duration_seconds = 0.0;
  std::vector<FileEntry> files;
  std::string status = "ok";  ///< ok | error
  int exit_code = 0;
  std::string error_kind;
  std::string error_message;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> notes;

  std::string to_json() const;
};

/// Writes dir/manifest.json.
void write_manifest(const std::string& dir, const Manifest& manifest);

/// Artifact version string.
const char* artifact_version() noexcept;

}  // namespace rotor::app
