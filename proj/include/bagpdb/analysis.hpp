#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bagpdb/fact.hpp"
#include "bagpdb/query.hpp"

namespace bagpdb {

/// A connected component of a CQ: atoms linked through shared variables.
struct Component {
  std::vector<std::string> variables;  // in quantifier-prefix order
  std::vector<Atom> atoms;             // in query order

  /// EXISTS variables . atoms
  CQ as_query() const { return CQ{variables, atoms}; }
};

struct QueryAnalysis {
  /// sg(x): relation symbols of the atoms that contain x.
  std::map<std::string, std::set<std::string>> sg;
  /// Variable-free atoms (Q0), in query order.
  std::vector<Atom> constant_atoms;
  /// Components ordered by their first atom in the query.
  std::vector<Component> components;
  bool hierarchical = true;
  bool self_join_free = true;
  /// Maximum number of atoms sharing one relation symbol.
  std::size_t self_join_width = 1;
  /// A witness pair (x, y) when not hierarchical.
  std::pair<std::string, std::string> non_hierarchical_pair;
};

QueryAnalysis analyze(const CQ& q);

/// A variable x of the component with sg(y) ⊆ sg(x) for every variable y of
/// the component; the lexicographically smallest one if several qualify.
/// Throws PreconditionError if none exists.
std::string maximal_variable(const Component& component);

/// Grounding profile of a CQ under a valuation: each distinct fact of the
/// grounded conjunction with the number of atoms that produce it.
using GroundingProfile = std::map<Fact, unsigned>;

/// Replaces every variable by its value. Throws PreconditionError when the
/// valuation misses a bound variable.
GroundingProfile substitute(const CQ& q, const std::map<std::string, std::string>& valuation);

/// Replaces one variable by a constant and drops it from the prefix.
CQ bind_variable(const CQ& q, const std::string& variable, const std::string& value);

/// Ground atom to fact; the atom must be ground.
Fact ground_fact(const Atom& atom);

}  // namespace bagpdb
