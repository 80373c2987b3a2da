#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "winprob/domain.hpp"

namespace winprob::csv {

// Shortest decimal that parses back to the identical double.
inline std::string format(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline std::string format(long long value) { return std::to_string(value); }
inline std::string format(int value) { return std::to_string(value); }

inline std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += fields[i];
  }
  return line;
}

// Comma-delimited reader. Fields are plain tokens: no quoting, UTF-8,
// '.' decimal separator. Tracks line numbers for error messages.
class Reader {
 public:
  Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  std::size_t line_number() const { return line_number_; }

  // Reads the next non-empty line split into fields; false at EOF.
  bool next_row(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
          fields.emplace_back(line, start);
          break;
        }
        fields.emplace_back(line, start, comma - start);
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  void expect_header(const std::string& header) {
    std::string line;
    if (!std::getline(in_, line)) fail("missing header, expected '" + header + "'");
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) {
      fail("bad header '" + line + "', expected '" + header + "'");
    }
  }

  void require_fields(const std::vector<std::string>& fields, std::size_t count) {
    if (fields.size() != count) {
      fail("expected " + std::to_string(count) + " fields, got " +
           std::to_string(fields.size()));
    }
  }

  double parse_double(const std::string& field, const char* what) {
    double value = 0.0;
    const char* end = field.data() + field.size();
    const auto res = std::from_chars(field.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) {
      fail(std::string("malformed ") + what + " '" + field + "'");
    }
    return value;
  }

  long long parse_int(const std::string& field, const char* what) {
    long long value = 0;
    const char* end = field.data() + field.size();
    const auto res = std::from_chars(field.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) {
      fail(std::string("malformed ") + what + " '" + field + "'");
    }
    return value;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError(name_ + ":" + std::to_string(line_number_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t line_number_ = 0;
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace winprob::csv
