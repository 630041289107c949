#include "qae_cli/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qae/errors.hpp"

namespace qae::cli {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  std::string origin;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  }

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') ++line;
    ++pos;
  }

  // spaces, tabs, comments; newlines only when `newlines` is set
  void skip_ws(bool newlines) {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' ||
                 (newlines && c == '\n')) {
        advance();
      } else {
        break;
      }
    }
  }
};

std::string parse_bare_key(Cursor& cur) {
  std::string key;
  while (!cur.done()) {
    char c = cur.peek();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
      key += c;
      cur.advance();
    } else {
      break;
    }
  }
  if (key.empty()) cur.fail("expected a key");
  return key;
}

std::string parse_string(Cursor& cur) {
  cur.advance();  // opening quote
  std::string out;
  while (!cur.done() && cur.peek() != '"') {
    char c = cur.peek();
    if (c == '\n') cur.fail("unterminated string");
    if (c == '\\') {
      cur.advance();
      if (cur.done()) cur.fail("unterminated escape");
      char e = cur.peek();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: cur.fail("unsupported escape sequence");
      }
      cur.advance();
    } else {
      out += c;
      cur.advance();
    }
  }
  if (cur.done()) cur.fail("unterminated string");
  cur.advance();  // closing quote
  return out;
}

TomlValue parse_value(Cursor& cur);

TomlValue parse_array(Cursor& cur) {
  cur.advance();  // '['
  TomlArray arr;
  cur.skip_ws(true);
  while (!cur.done() && cur.peek() != ']') {
    arr.push_back(parse_value(cur));
    cur.skip_ws(true);
    if (!cur.done() && cur.peek() == ',') {
      cur.advance();
      cur.skip_ws(true);
    } else {
      break;
    }
  }
  if (cur.done() || cur.peek() != ']') cur.fail("unterminated array");
  cur.advance();
  return TomlValue{std::move(arr)};
}

TomlValue parse_scalar(Cursor& cur) {
  std::string tok;
  while (!cur.done()) {
    char c = cur.peek();
    if (c == '\n' || c == ',' || c == ']' || c == '#' || c == ' ' ||
        c == '\t' || c == '\r')
      break;
    tok += c;
    cur.advance();
  }
  if (tok.empty()) cur.fail("expected a value");
  if (tok == "true") return TomlValue{true};
  if (tok == "false") return TomlValue{false};

  bool looks_float = tok.find_first_of(".eE") != std::string::npos &&
                     tok.find_first_not_of("+-0123456789.eE") ==
                         std::string::npos;
  if (!looks_float) {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
    if (ec == std::errc{} && p == tok.data() + tok.size())
      return TomlValue{iv};
  }
  double dv = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), dv);
  if (ec == std::errc{} && p == tok.data() + tok.size())
    return TomlValue{dv};
  cur.fail("cannot parse value '" + tok + "'");
}

TomlValue parse_value(Cursor& cur) {
  cur.skip_ws(false);
  if (cur.done()) cur.fail("expected a value");
  char c = cur.peek();
  if (c == '"') return TomlValue{parse_string(cur)};
  if (c == '[') return parse_array(cur);
  return parse_scalar(cur);
}

}  // namespace

TomlTable parse_toml(const std::string& text, const std::string& origin) {
  Cursor cur{text, 0, 1, origin};
  TomlTable table;
  std::string section;

  while (true) {
    cur.skip_ws(true);
    if (cur.done()) break;
    char c = cur.peek();
    if (c == '[') {
      cur.advance();
      cur.skip_ws(false);
      section = parse_bare_key(cur);
      cur.skip_ws(false);
      if (cur.done() || cur.peek() != ']')
        cur.fail("unterminated section header");
      cur.advance();
      if (table.contains(section)) cur.fail("duplicate section " + section);
      table[section];  // record even if empty
      continue;
    }
    std::string key = parse_bare_key(cur);
    cur.skip_ws(false);
    if (cur.done() || cur.peek() != '=') cur.fail("expected '=' after key");
    cur.advance();
    TomlValue value = parse_value(cur);
    cur.skip_ws(false);
    if (!cur.done() && cur.peek() != '\n')
      cur.fail("unexpected trailing content after value");
    if (table[section].contains(key))
      cur.fail("duplicate key '" + key + "'");
    table[section].emplace(key, std::move(value));
  }
  return table;
}

TomlTable parse_toml_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str(), file.string());
}

}  // namespace qae::cli
