#include "probwb/output.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace probwb {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw UsageError("parameter '" + key + "': cannot parse '" + text + "'");
  return v;
}

}  // namespace

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_number<double>(key, it->second);
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_number<std::int64_t>(key, it->second);
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<int> RunConfig::get_int_list(const std::string& key,
                                         const std::vector<int>& fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::vector<int> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(key, item));
  if (out.empty()) throw UsageError("parameter '" + key + "': empty list");
  return out;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["seed"] = master_seed;
  j["trials"] = trials;
  j["params"] = params;
  return j;
}

std::string run_id(const RunConfig& cfg) {
  const std::string text = cfg.to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << ',';
      os << fields[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

}  // namespace probwb
