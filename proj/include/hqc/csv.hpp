#pragma once

// Minimal RFC-4180 CSV writer. Numbers use scientific notation with 12
// significant digits and '.' as the decimal separator.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqc::csv {

std::string format_number(double value);
/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void header(std::span<const std::string> names);
  void header(std::initializer_list<std::string> names);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values);
  /// Mixed row: pre-formatted text fields.
  void text_row(std::span<const std::string> fields);

 private:
  std::ostream& out_;
};

}  // namespace hqc::csv
