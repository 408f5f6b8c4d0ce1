#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace probwb {

/// Raised for unknown subcommands and malformed parameters.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::uint64_t master_seed = 1;
  int trials = 100;
  int threads = 1;
  std::string out_dir = ".";

  /// Typed parameter lookup; throws UsageError when the value does not parse.
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

  /// Config echo without the thread count, which never affects results.
  nlohmann::json to_json() const;
};

/// 16 hex digits of FNV-1a over the canonical config echo.
std::string run_id(const RunConfig& cfg);

/// Header plus records, every field already formatted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

/// Shortest round-trip decimal form.
std::string format_double(double x);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace probwb
