#include "bagpdb/table_io.hpp"

#include <fstream>
#include <sstream>

#include "bagpdb/errors.hpp"

namespace bagpdb {

namespace {

bool is_bare(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_bare(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_bare(c)) return false;
  return true;
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  Fact fact() {
    skip_space();
    Fact f;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_bare(s_[pos_])) ++pos_;
    f.relation = std::string(s_.substr(start, pos_ - start));
    if (!is_identifier(f.relation)) fail("expected a relation name");
    skip_space();
    expect('(');
    while (true) {
      skip_space();
      f.args.push_back(constant());
      skip_space();
      if (peek() == ')') break;
      expect(',');
    }
    expect(')');
    return f;
  }

  std::string_view rest_after_at() {
    skip_space();
    expect('@');
    return s_.substr(pos_);
  }

 private:
  std::string constant() {
    if (peek() == '"') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
      if (pos_ == s_.size()) fail("unterminated quoted constant");
      std::string value(s_.substr(start, pos_ - start));
      ++pos_;
      if (value.empty()) fail("empty constant");
      return value;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_bare(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected a constant");
    return std::string(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_) + ": " + what, line_);
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

// Drops a trailing comment; '#' inside quotes is part of a constant.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

TIRSTable parse_table(std::string_view text) {
  TIRSTable table;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = strip_comment(line);
    if (blank(line)) continue;
    LineParser p(line, line_no);
    try {
      Fact f = p.fact();
      const auto dist = parse_distribution(p.rest_after_at());
      table.insert(std::move(f), dist);
    } catch (const ParseError& e) {
      if (e.position() == line_no && std::string_view(e.what()).starts_with("line ")) throw;
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

TIRSTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open table file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

std::string format_table(const TIRSTable& table) {
  std::string out;
  for (const auto& [fact, dist] : table.entries()) {
    out += fact.relation + "(";
    for (std::size_t i = 0; i < fact.args.size(); ++i) {
      if (i > 0) out += ",";
      out += is_bare(fact.args[i]) ? fact.args[i] : "\"" + fact.args[i] + "\"";
    }
    out += ") @ " + to_string(dist) + "\n";
  }
  return out;
}

void save_table(const TIRSTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write table file '" + path + "'", 0);
  out << format_table(table);
}

}  // namespace bagpdb
