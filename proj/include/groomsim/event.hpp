#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "groomsim/ids.hpp"

namespace groomsim {

// One act of social grooming: on `day`, `groomer` grooms `groomee` with
// communication volume `volume` (characters, seconds, message count, or a
// strength increment for simulated traces; zero is legal).
struct InteractionEvent {
  std::int32_t day = 0;
  UserId groomer = 0;
  UserId groomee = 0;
  double volume = 0.0;

  friend bool operator==(const InteractionEvent&,
                         const InteractionEvent&) = default;
};

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct EventLog {
  IdTable ids;
  std::vector<InteractionEvent> events;
  std::vector<RowError> errors;
};

inline constexpr std::string_view kEventCsvHeader = "day,groomer,groomee,volume";

namespace detail {

inline std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

inline bool parse_int32(std::string_view s, std::int32_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

inline bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace detail

// Parses the interchange event schema `day,groomer,groomee,volume`.
// A bad header throws; malformed rows are collected in .errors with their
// line numbers while well-formed rows still parse.
inline EventLog parse_event_log(std::istream& in) {
  EventLog log;
  std::string line;
  if (!std::getline(in, line) || detail::strip_cr(line) != kEventCsvHeader) {
    throw std::runtime_error(
        "event CSV schema error: expected header 'day,groomer,groomee,volume'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = detail::strip_cr(line);
    if (row.empty()) continue;

    std::string_view field[4];
    std::size_t nfields = 0;
    std::size_t start = 0;
    bool overflow = false;
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ',') {
        if (nfields == 4) {
          overflow = true;
          break;
        }
        field[nfields++] = row.substr(start, i - start);
        start = i + 1;
      }
    }
    if (overflow || nfields != 4) {
      log.errors.push_back({line_no, "expected 4 fields"});
      continue;
    }

    std::int32_t day = 0;
    double volume = 0.0;
    if (!detail::parse_int32(field[0], day) || day < 1) {
      log.errors.push_back({line_no, "day must be a positive integer"});
      continue;
    }
    if (field[1].empty() || field[2].empty()) {
      log.errors.push_back({line_no, "empty user token"});
      continue;
    }
    if (field[1] == field[2]) {
      log.errors.push_back({line_no, "self-loop"});
      continue;
    }
    if (!detail::parse_double(field[3], volume) || !(volume >= 0.0)) {
      log.errors.push_back({line_no, "volume must be a non-negative number"});
      continue;
    }
    log.events.push_back({day, log.ids.intern(field[1]),
                          log.ids.intern(field[2]), volume});
  }
  return log;
}

}  // namespace groomsim
