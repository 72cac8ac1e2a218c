#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bagpdb {

enum class TermKind { Variable, Constant };

/// A query term. Variables and constants live in separate namespaces; the
/// concrete syntax quotes constants.
struct Term {
  TermKind kind = TermKind::Variable;
  std::string name;

  static Term variable(std::string name) { return {TermKind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {TermKind::Constant, std::move(name)}; }

  bool is_variable() const noexcept { return kind == TermKind::Variable; }
  bool is_constant() const noexcept { return kind == TermKind::Constant; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Atom {
  std::string relation;
  std::vector<Term> args;

  bool is_ground() const noexcept;
  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

/// Boolean conjunctive query: EXISTS bound_vars . atoms[0] & atoms[1] & ...
struct CQ {
  std::vector<std::string> bound_vars;
  std::vector<Atom> atoms;

  auto operator<=>(const CQ&) const = default;
  bool operator==(const CQ&) const = default;
};

/// Boolean union of conjunctive queries.
struct UCQ {
  std::vector<CQ> disjuncts;

  UCQ() = default;
  explicit UCQ(std::vector<CQ> d) : disjuncts(std::move(d)) {}
  UCQ(CQ single) { disjuncts.push_back(std::move(single)); }  // NOLINT: implicit on purpose

  bool operator==(const UCQ&) const = default;
};

/// Parses the textual query language:
///
///   ucq  := cq ("|" cq)*
///   cq   := ["EXISTS" ident+ "."] atom ("&" atom)*
///   atom := relname "(" term ("," term)* ")"
///   term := ident | '"' constant '"'
///
/// Bare identifiers are variables, quoted ones constants. Throws ParseError
/// (with byte offset) on syntax errors and ValidationError on free or unused
/// variables, duplicate quantifiers and inconsistent arities.
UCQ parse_query(std::string_view text);

/// Inverse of parse_query (canonical spacing).
std::string to_string(const UCQ& q);
std::string to_string(const CQ& q);
std::string to_string(const Atom& atom);

/// Checks the CQ invariants; throws ValidationError.
void validate(const CQ& q);
void validate(const UCQ& q);

/// relation -> arity over every atom of the query; throws ValidationError if a
/// relation is used with two different arities.
std::map<std::string, std::size_t> relation_arities(const UCQ& q);

/// Constants occurring in the query.
std::vector<std::string> query_constants(const UCQ& q);

/// True for identifiers accepted by the grammar ([A-Za-z_][A-Za-z0-9_]*).
bool is_identifier(std::string_view s) noexcept;

/// True for quoted-constant bodies accepted by the grammar ([A-Za-z0-9_]+).
bool is_constant_name(std::string_view s) noexcept;

}  // namespace bagpdb
