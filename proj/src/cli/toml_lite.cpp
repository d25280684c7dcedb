#include "hqc/cli/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <vector>

namespace hqc::cli {

using nlohmann::json;

TomlError::TomlError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  TomlDocument run() {
    std::vector<std::string> table;
    while (true) {
      skip_blank();
      if (eof()) break;
      if (peek() == '[') {
        table = parse_header();
      } else {
        parse_pair(table);
      }
      end_of_line();
    }
    return std::move(doc_);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  TomlDocument doc_;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  char get() {
    const char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw TomlError(line_, msg); }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }
  // Whitespace, comments and newlines.
  void skip_blank() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r')
        get();
      else
        break;
    }
  }
  void end_of_line() {
    skip_ws();
    skip_comment();
    if (eof()) return;
    if (peek() == '\r') get();
    if (eof()) return;
    if (peek() != '\n') fail(std::string("unexpected '") + peek() + "' after value");
    get();
  }

  static bool bare_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_key_part() {
    skip_ws();
    if (peek() == '"') return parse_basic_string();
    if (peek() == '\'') return parse_literal_string();
    const std::size_t start = pos_;
    while (!eof() && bare_char(peek())) ++pos_;
    if (pos_ == start) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::vector<std::string> parse_key() {
    std::vector<std::string> parts{parse_key_part()};
    skip_ws();
    while (peek() == '.') {
      ++pos_;
      parts.push_back(parse_key_part());
      skip_ws();
    }
    return parts;
  }

  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  std::vector<std::string> parse_header() {
    ++pos_;
    if (peek() == '[') fail("arrays of tables are not supported");
    auto key = parse_key();
    if (peek() != ']') fail("expected ']' to close the table header");
    ++pos_;
    json* node = &doc_.root;
    for (const auto& part : key) {
      json& child = (*node)[part];
      if (child.is_null()) child = json::object();
      if (!child.is_object()) fail("'" + join(key) + "' is already defined as a value");
      node = &child;
    }
    const std::string path = join(key);
    if (doc_.lines.count(path)) fail("table '" + path + "' defined twice");
    doc_.lines[path] = line_;
    return key;
  }

  void parse_pair(const std::vector<std::string>& table) {
    const int line = line_;
    auto key = parse_key();
    if (peek() != '=') fail("expected '=' after key '" + join(key) + "'");
    ++pos_;
    skip_ws();
    json value = parse_value();
    std::vector<std::string> full = table;
    full.insert(full.end(), key.begin(), key.end());
    insert(full, std::move(value), line);
  }

  void insert(const std::vector<std::string>& path, json value, int line) {
    json* node = &doc_.root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json& child = (*node)[path[i]];
      if (child.is_null()) child = json::object();
      if (!child.is_object()) throw TomlError(line, "'" + path[i] + "' is not a table");
      node = &child;
    }
    const std::string full = join(path);
    if (node->contains(path.back())) throw TomlError(line, "duplicate key '" + full + "'");
    (*node)[path.back()] = std::move(value);
    doc_.lines[full] = line;
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  std::string parse_basic_string() {
    ++pos_;
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (eof()) fail("unterminated escape");
      c = get();
      switch (c) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(std::string("unsupported escape '\\") + c + "'");
      }
    }
    return out;
  }

  std::string parse_literal_string() {
    ++pos_;
    const std::size_t start = pos_;
    while (!eof() && peek() != '\'' && peek() != '\n') ++pos_;
    if (peek() != '\'') fail("unterminated literal string");
    std::string out(s_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  json parse_number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_'))
      ++pos_;
    std::string tok;
    for (char ch : s_.substr(start, pos_ - start))
      if (ch != '_') tok += ch;
    if (tok.empty()) fail("expected a value");
    if (tok == "inf" || tok == "+inf" || tok == "-inf" || tok == "nan" || tok == "+nan" ||
        tok == "-nan")
      fail("non-finite numbers are not accepted");
    const bool is_float = tok.find_first_of(".eE") != std::string::npos;
    const char* b = tok.data() + (tok[0] == '+' ? 1 : 0);
    const char* e = tok.data() + tok.size();
    if (!is_float) {
      long long v = 0;
      auto [p, ec] = std::from_chars(b, e, v);
      if (ec == std::errc() && p == e) return v;
    } else {
      double v = 0.0;
      auto [p, ec] = std::from_chars(b, e, v);
      if (ec == std::errc() && p == e) return v;
    }
    fail("invalid value '" + tok + "'");
  }

  json parse_array() {
    ++pos_;
    json arr = json::array();
    while (true) {
      skip_blank();
      if (peek() == ']') {
        ++pos_;
        return arr;
      }
      if (eof()) fail("unterminated array");
      arr.push_back(parse_value());
      skip_blank();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  json parse_inline_table() {
    ++pos_;
    json obj = json::object();
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return obj;
    }
    while (true) {
      auto key = parse_key();
      if (peek() != '=') fail("expected '=' in inline table");
      ++pos_;
      skip_ws();
      json* node = &obj;
      for (std::size_t i = 0; i + 1 < key.size(); ++i) node = &(*node)[key[i]];
      if (node->contains(key.back())) fail("duplicate key '" + join(key) + "' in inline table");
      (*node)[key.back()] = parse_value();
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == '}') {
        ++pos_;
        return obj;
      }
      fail("expected ',' or '}' in inline table");
    }
  }
};

}  // namespace

TomlDocument parse_toml(std::string_view text) { return Parser(text).run(); }

}  // namespace hqc::cli
