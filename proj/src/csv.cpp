#include "hqc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace hqc::csv {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void Writer::text_row(std::span<const std::string> fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out_ << ',';
    out_ << escape(fields[k]);
  }
  out_ << "\r\n";
}

void Writer::header(std::span<const std::string> names) { text_row(names); }

void Writer::header(std::initializer_list<std::string> names) {
  header(std::span<const std::string>(names.begin(), names.size()));
}

void Writer::row(std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out_ << ',';
    out_ << format_number(values[k]);
  }
  out_ << "\r\n";
}

void Writer::row(std::initializer_list<double> values) {
  row(std::span<const double>(values.begin(), values.size()));
}

}  // namespace hqc::csv
