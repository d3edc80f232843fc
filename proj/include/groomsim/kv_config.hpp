#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace groomsim {

using KvMap = std::map<std::string, std::string>;

namespace detail {
inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}
}  // namespace detail

// Flat `key = value` config text; '#' starts a comment line.
inline KvMap parse_kv(std::istream& in) {
  KvMap kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = detail::trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto eq = row.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key{detail::trim(row.substr(0, eq))};
    const std::string value{detail::trim(row.substr(eq + 1))};
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key '" + key + "'");
  }
  return kv;
}

inline const std::string& kv_require(const KvMap& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("missing required key '" + key + "'");
  return it->second;
}

inline double kv_double(const KvMap& kv, const std::string& key) {
  const std::string& raw = kv_require(kv, key);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc{} || ptr != raw.data() + raw.size())
    throw std::invalid_argument("key '" + key + "': not a number");
  return v;
}

inline std::int64_t kv_int(const KvMap& kv, const std::string& key) {
  const std::string& raw = kv_require(kv, key);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc{} || ptr != raw.data() + raw.size())
    throw std::invalid_argument("key '" + key + "': not an integer");
  return v;
}

inline std::uint64_t kv_uint64(const KvMap& kv, const std::string& key) {
  const std::string& raw = kv_require(kv, key);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc{} || ptr != raw.data() + raw.size())
    throw std::invalid_argument("key '" + key + "': not an integer");
  return v;
}

// Comma-separated doubles, e.g. "0,0.5,1".
inline std::vector<double> parse_double_list(const std::string& raw,
                                             const std::string& key) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= raw.size()) {
    auto end = raw.find(',', start);
    if (end == std::string::npos) end = raw.size();
    const auto piece = detail::trim(std::string_view(raw).substr(
        start, end - start));
    if (piece.empty())
      throw std::invalid_argument("key '" + key + "': empty list entry");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size())
      throw std::invalid_argument("key '" + key + "': not a number list");
    values.push_back(v);
    if (end == raw.size()) break;
    start = end + 1;
  }
  return values;
}

}  // namespace groomsim
