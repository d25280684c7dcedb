#pragma once

// Parser for the TOML subset used by scenario files: tables, dotted keys,
// basic and literal strings, integers, floats, booleans, (multi-line)
// arrays and inline tables. Dates and multi-line strings are not supported.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hqc::cli {

class TomlError : public std::runtime_error {
 public:
  TomlError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct TomlDocument {
  nlohmann::json root = nlohmann::json::object();
  /// Dotted key path -> 1-based line of its definition.
  std::map<std::string, int> lines;
};

TomlDocument parse_toml(std::string_view text);

}  // namespace hqc::cli
