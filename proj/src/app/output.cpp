#include "rotor/app/output.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/text.hpp"
#include "rotor/error.hpp"

#ifndef ROTOR_VERSION
#define ROTOR_VERSION "0.0.0"
#endif

namespace rotor::app {

namespace fs = std::filesystem;

namespace {

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path.string() + "'");
}

double parse_number(const std::string& cell, std::size_t line) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::validation,
                "csv line " + std::to_string(line) + ": not a number '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorKind::size_mismatch, "csv row has " + std::to_string(row.size()) +
                                              " cells, header has " +
                                              std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::vector<double> CsvTable::column(std::size_t index) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(index));
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string checksum_text(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) hex[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return "fnv1a64:" + hex;
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c].name;
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw Error(ErrorKind::validation, "csv: missing header");
  for (auto& name : split(line, ',')) table.columns.push_back({name, ""});
  std::size_t line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorKind::size_mismatch, "csv line " + std::to_string(line_no) +
                                                ": wrong number of cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_number(cell, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

FileEntry write_csv(const std::string& dir, const std::string& name, const CsvTable& table) {
  const std::string bytes = format_csv(table);
  write_bytes(fs::path(dir) / name, bytes);
  return {name, "csv", table.rows.size(), table.columns.size(), table.columns,
          checksum_text(bytes)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_file(path)); }

FileEntry write_field(const std::string& dir, const std::string& name,
                      const AmplitudeField& field) {
  const auto data = field.data();
  std::string bytes(data.size() * sizeof(double), '\0');
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(data[i]);
    for (std::size_t b = 0; b < 8; ++b, bits >>= 8) {
      bytes[i * 8 + b] = static_cast<char>(bits & 0xff);
    }
  }
  write_bytes(fs::path(dir) / name, bytes);
  return {name,
          "f64le",
          field.rows(),
          field.cols(),
          {{"amplitude", "|psi| (rad^-1/2), row = kick, column = node j at theta = 2 pi j / M"}},
          checksum_text(bytes)};
}

AmplitudeField read_field(const std::string& path, std::size_t cols) {
  const std::string bytes = read_file(path);
  if (cols == 0 || bytes.size() % (8 * cols) != 0) {
    throw Error(ErrorKind::size_mismatch,
                "field file '" + path + "' is not a whole number of rows of " +
                    std::to_string(cols));
  }
  std::vector<double> values(bytes.size() / 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
    }
    values[i] = std::bit_cast<double>(bits);
  }
  return AmplitudeField::from_flat(cols, std::move(values));
}

FileEntry write_field_csv(const std::string& dir, const std::string& name,
                          const AmplitudeField& field) {
  CsvTable table;
  table.columns = {{"kick", "kick index"},
                   {"node", "grid index j"},
                   {"theta", "rad"},
                   {"amplitude", "|psi| (rad^-1/2)"}};
  const auto grid = field.grid();
  for (std::size_t r = 0; r < field.rows(); ++r) {
    for (std::size_t j = 0; j < field.cols(); ++j) {
      table.rows.push_back({static_cast<double>(r), static_cast<double>(j), grid.node(j),
                            field.at(r, j)});
    }
  }
  return write_csv(dir, name, table);
}

std::string Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["artifact"] = "rotor-caustics";
  j["version"] = version;
  j["mode"] = mode;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  j["status"] = status;
  j["exit_code"] = exit_code;
  if (status == "ok") {
    j["error"] = nullptr;
  } else {
    j["error"] = {{"kind", error_kind}, {"message", error_message}};
  }
  j["duration_seconds"] = duration_seconds;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    nlohmann::ordered_json entry;
    entry["name"] = f.name;
    entry["format"] = f.format;
    entry["rows"] = f.rows;
    entry["cols"] = f.cols;
    if (f.format == "f64le") entry["byte_order"] = "little";
    entry["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : f.columns) entry["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
    entry["checksum"] = f.checksum;
    j["files"].push_back(entry);
  }
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : summary) j["summary"][k] = v;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& dir, const Manifest& manifest) {
  write_bytes(fs::path(dir) / "manifest.json", manifest.to_json());
}

const char* artifact_version() noexcept { return ROTOR_VERSION; }

}  // namespace rotor::app
