#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "i3/errors.hpp"

namespace i3::csv {

struct Record {
  std::size_t line = 0;  // line on which the record starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: comma separated, double-quote escaping, quoted fields may
// span lines. Accepts LF and CRLF line endings.
class Reader {
 public:
  Reader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  std::optional<Record> next() {
    Record rec;
    std::string field;
    bool in_quotes = false;
    bool quoted = false;
    bool any = false;
    rec.line = line_ + 1;

    for (;;) {
      int c = in_.get();
      if (c == std::char_traits<char>::eof()) {
        if (in_quotes)
          throw LoadError(source_, rec.line, "unterminated quoted field");
        if (!any) return std::nullopt;
        rec.fields.push_back(std::move(field));
        ++line_;
        return rec;
      }
      any = true;
      char ch = static_cast<char>(c);
      if (in_quotes) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      switch (ch) {
        case '"':
          if (!field.empty() || quoted)
            throw LoadError(source_, rec.line, "stray quote inside field");
          in_quotes = true;
          quoted = true;
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          quoted = false;
          break;
        case '\r':
          if (in_.peek() != '\n') field.push_back(ch);
          break;
        case '\n':
          rec.fields.push_back(std::move(field));
          ++line_;
          return rec;
        default:
          if (quoted)
            throw LoadError(source_, rec.line, "text after closing quote");
          field.push_back(ch);
      }
    }
  }

  // Reads the header row and checks it against `expected` (whitespace and a
  // leading UTF-8 BOM are ignored).
  void expect_header(const std::vector<std::string_view>& expected) {
    auto rec = next();
    if (!rec) throw LoadError(source_, 1, "missing header row");
    if (!rec->fields.empty()) {
      auto& first = rec->fields.front();
      if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
    }
    bool ok = rec->fields.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i)
      ok = trim(rec->fields[i]) == expected[i];
    if (!ok) {
      std::string want;
      for (auto h : expected) want += (want.empty() ? "" : ",") + std::string(h);
      throw LoadError(source_, rec->line, "expected header `" + want + "`");
    }
  }

  const std::string& source() const noexcept { return source_; }

  static std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

inline void write_field(std::ostream& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace i3::csv
