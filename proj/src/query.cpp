#include "bagpdb/query.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "bagpdb/errors.hpp"
#include "bagpdb/fact.hpp"

namespace bagpdb {

std::string to_string(const Fact& fact) {
  std::string s = fact.relation + "(";
  for (std::size_t i = 0; i < fact.args.size(); ++i) {
    if (i > 0) s += ",";
    s += fact.args[i];
  }
  return s + ")";
}

std::size_t FactHash::operator()(const Fact& f) const noexcept {
  std::hash<std::string> h;
  std::size_t seed = h(f.relation);
  for (const auto& a : f.args) seed ^= h(a) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

bool Atom::is_ground() const noexcept {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
}

bool is_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  auto c0 = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(c0) || c0 == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_constant_name(std::string_view s) noexcept {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

enum class Tok { Ident, Quoted, LParen, RParen, Comma, Amp, Bar, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "", i_});
        return out;
      }
      const std::size_t start = i_;
      const char c = src_[i_];
      switch (c) {
        case '(': out.push_back({Tok::LParen, "(", start}); ++i_; continue;
        case ')': out.push_back({Tok::RParen, ")", start}); ++i_; continue;
        case ',': out.push_back({Tok::Comma, ",", start}); ++i_; continue;
        case '&': out.push_back({Tok::Amp, "&", start}); ++i_; continue;
        case '|': out.push_back({Tok::Bar, "|", start}); ++i_; continue;
        case '.': out.push_back({Tok::Dot, ".", start}); ++i_; continue;
        case '"': {
          ++i_;
          const std::size_t body = i_;
          while (i_ < src_.size() && src_[i_] != '"') ++i_;
          if (i_ >= src_.size()) throw ParseError("unterminated constant", start);
          std::string name(src_.substr(body, i_ - body));
          ++i_;
          if (!is_constant_name(name)) {
            throw ParseError("invalid constant \"" + name + "\"", start);
          }
          out.push_back({Tok::Quoted, std::move(name), start});
          continue;
        }
        default: break;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
          ++i_;
        }
        out.push_back({Tok::Ident, std::string(src_.substr(start, i_ - start)), start});
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

 private:
  void skip_ws() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  UCQ parse() {
    UCQ q;
    q.disjuncts.push_back(parse_cq());
    while (peek().kind == Tok::Bar) {
      ++i_;
      q.disjuncts.push_back(parse_cq());
    }
    if (peek().kind != Tok::End) fail("expected '|' or end of query");
    return q;
  }

 private:
  const Token& peek() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got + " at offset " + std::to_string(t.pos), t.pos);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return toks_[i_++];
  }

  CQ parse_cq() {
    CQ cq;
    if (peek().kind == Tok::Ident && peek().text == "EXISTS") {
      ++i_;
      if (peek().kind != Tok::Ident) fail("expected variable after EXISTS");
      while (peek().kind == Tok::Ident) cq.bound_vars.push_back(toks_[i_++].text);
      expect(Tok::Dot, "'.' after quantified variables");
    }
    cq.atoms.push_back(parse_atom());
    while (peek().kind == Tok::Amp) {
      ++i_;
      cq.atoms.push_back(parse_atom());
    }
    return cq;
  }

  Atom parse_atom() {
    Atom a;
    if (peek().kind != Tok::Ident || peek().text == "EXISTS") fail("expected relation name");
    a.relation = toks_[i_++].text;
    expect(Tok::LParen, "'('");
    a.args.push_back(parse_term());
    while (peek().kind == Tok::Comma) {
      ++i_;
      a.args.push_back(parse_term());
    }
    expect(Tok::RParen, "')' or ','");
    return a;
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      ++i_;
      return Term::variable(t.text);
    }
    if (t.kind == Tok::Quoted) {
      ++i_;
      return Term::constant(t.text);
    }
    fail("expected variable or quoted constant");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

void validate(const CQ& q) {
  if (q.atoms.empty()) throw ValidationError("conjunctive query without atoms");
  std::set<std::string> bound;
  for (const auto& v : q.bound_vars) {
    if (!is_identifier(v) || v == "EXISTS") {
      throw ValidationError("invalid variable name '" + v + "'");
    }
    if (!bound.insert(v).second) throw ValidationError("variable '" + v + "' quantified twice");
  }
  std::set<std::string> used;
  for (const auto& atom : q.atoms) {
    if (!is_identifier(atom.relation) || atom.relation == "EXISTS") {
      throw ValidationError("invalid relation name '" + atom.relation + "'");
    }
    if (atom.args.empty()) throw ValidationError("atom " + atom.relation + " has no arguments");
    for (const auto& t : atom.args) {
      if (t.name.empty()) throw ValidationError("empty term in atom " + atom.relation);
      if (t.is_variable()) {
        if (!bound.contains(t.name)) {
          throw ValidationError("free variable '" + t.name + "' (every variable must be quantified)");
        }
        used.insert(t.name);
      }
    }
  }
  for (const auto& v : q.bound_vars) {
    if (!used.contains(v)) throw ValidationError("quantified variable '" + v + "' does not occur in any atom");
  }
}

std::map<std::string, std::size_t> relation_arities(const UCQ& q) {
  std::map<std::string, std::size_t> arity;
  for (const auto& cq : q.disjuncts) {
    for (const auto& atom : cq.atoms) {
      auto [it, inserted] = arity.emplace(atom.relation, atom.args.size());
      if (!inserted && it->second != atom.args.size()) {
        throw ValidationError("relation " + atom.relation + " used with arity " +
                              std::to_string(it->second) + " and " +
                              std::to_string(atom.args.size()));
      }
    }
  }
  return arity;
}

void validate(const UCQ& q) {
  if (q.disjuncts.empty()) throw ValidationError("union without disjuncts");
  for (const auto& cq : q.disjuncts) validate(cq);
  relation_arities(q);
}

UCQ parse_query(std::string_view text) {
  UCQ q = Parser(Lexer(text).run()).parse();
  validate(q);
  return q;
}

std::vector<std::string> query_constants(const UCQ& q) {
  std::set<std::string> out;
  for (const auto& cq : q.disjuncts)
    for (const auto& atom : cq.atoms)
      for (const auto& t : atom.args)
        if (t.is_constant()) out.insert(t.name);
  return {out.begin(), out.end()};
}

std::string to_string(const Atom& atom) {
  std::string s = atom.relation + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i > 0) s += ",";
    const Term& t = atom.args[i];
    s += t.is_constant() ? "\"" + t.name + "\"" : t.name;
  }
  return s + ")";
}

std::string to_string(const CQ& q) {
  std::string s;
  if (!q.bound_vars.empty()) {
    s += "EXISTS";
    for (const auto& v : q.bound_vars) s += " " + v;
    s += " . ";
  }
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    if (i > 0) s += " & ";
    s += to_string(q.atoms[i]);
  }
  return s;
}

std::string to_string(const UCQ& q) {
  std::string s;
  for (std::size_t i = 0; i < q.disjuncts.size(); ++i) {
    if (i > 0) s += " | ";
    s += to_string(q.disjuncts[i]);
  }
  return s;
}

}  // namespace bagpdb
