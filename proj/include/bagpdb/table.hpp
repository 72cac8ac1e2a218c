#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bagpdb/distribution.hpp"
#include "bagpdb/fact.hpp"
#include "bagpdb/query.hpp"

namespace bagpdb {

/// Lookup structure over a set of facts: per-relation lists plus a
/// (relation, position, constant) index used to drive joins.
class FactIndex {
 public:
  void add(const Fact& fact);

  /// Facts of `atom.relation` that may match the atom once its variables are
  /// replaced through `binding` (variables absent from `binding` are free).
  /// The result is a superset of the matches; callers still unify.
  std::span<const Fact> candidates(const Atom& atom,
                                   const std::unordered_map<std::string, std::string>& binding) const;

  std::span<const Fact> facts_of(const std::string& relation) const;

 private:
  std::unordered_map<std::string, std::vector<Fact>> by_relation_;
  // key: relation + '\x1f' + position + '\x1f' + constant
  std::unordered_map<std::string, std::vector<Fact>> by_position_;
};

/// Tuple-independent table: every listed fact carries its own multiplicity
/// distribution; unlisted facts have multiplicity 0 almost surely.
class TIRSTable {
 public:
  TIRSTable() = default;

  /// Throws ValidationError on duplicates or arity clashes.
  void insert(Fact fact, MultiplicityDistribution dist);

  /// Distribution of `fact`, or nullptr when absent (multiplicity 0 a.s.).
  const MultiplicityDistribution* find(const Fact& fact) const;

  /// Canonically ordered entries.
  const std::map<Fact, MultiplicityDistribution>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const std::map<std::string, std::size_t>& arities() const noexcept { return arity_; }
  const FactIndex& index() const noexcept { return index_; }

  /// Restriction to the given relation symbols.
  TIRSTable restrict_to(const std::set<std::string>& relations) const;

  /// Union with a table over disjoint facts; throws ValidationError otherwise.
  TIRSTable disjoint_union(const TIRSTable& other) const;

  /// Throws ValidationError if the query uses a relation with a different
  /// arity than the table.
  void check_compatible(const UCQ& q) const;

  bool operator==(const TIRSTable& other) const { return entries_ == other.entries_; }

 private:
  std::map<Fact, MultiplicityDistribution> entries_;
  std::map<std::string, std::size_t> arity_;
  FactIndex index_;
};

/// Deterministic bag instance; only positive multiplicities are stored.
class BagInstance {
 public:
  void set(const Fact& fact, Count multiplicity);
  Count multiplicity(const Fact& fact) const;
  const std::map<Fact, Count>& multiplicities() const noexcept { return mult_; }

 private:
  std::map<Fact, Count> mult_;
};

/// Constants appearing in any fact of the table.
std::set<std::string> active_domain(const TIRSTable& table);

}  // namespace bagpdb
