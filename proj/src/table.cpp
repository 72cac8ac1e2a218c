#include "bagpdb/table.hpp"

#include "bagpdb/errors.hpp"

namespace bagpdb {

namespace {

std::string position_key(const std::string& relation, std::size_t pos, const std::string& value) {
  std::string key = relation;
  key += '\x1f';
  key += std::to_string(pos);
  key += '\x1f';
  key += value;
  return key;
}

}  // namespace

void FactIndex::add(const Fact& fact) {
  by_relation_[fact.relation].push_back(fact);
  for (std::size_t i = 0; i < fact.args.size(); ++i) {
    by_position_[position_key(fact.relation, i, fact.args[i])].push_back(fact);
  }
}

std::span<const Fact> FactIndex::facts_of(const std::string& relation) const {
  auto it = by_relation_.find(relation);
  if (it == by_relation_.end()) return {};
  return it->second;
}

std::span<const Fact> FactIndex::candidates(
    const Atom& atom, const std::unordered_map<std::string, std::string>& binding) const {
  std::span<const Fact> best = facts_of(atom.relation);
  for (std::size_t i = 0; i < atom.args.size() && !best.empty(); ++i) {
    const Term& t = atom.args[i];
    const std::string* value = nullptr;
    if (t.is_constant()) {
      value = &t.name;
    } else if (auto it = binding.find(t.name); it != binding.end()) {
      value = &it->second;
    }
    if (value == nullptr) continue;
    auto it = by_position_.find(position_key(atom.relation, i, *value));
    if (it == by_position_.end()) return {};
    if (it->second.size() < best.size()) best = it->second;
  }
  return best;
}

void TIRSTable::insert(Fact fact, MultiplicityDistribution dist) {
  if (fact.args.empty()) throw ValidationError("fact " + fact.relation + " has no arguments");
  auto [ait, fresh] = arity_.emplace(fact.relation, fact.args.size());
  if (!fresh && ait->second != fact.args.size()) {
    throw ValidationError("relation " + fact.relation + " has arity " + std::to_string(ait->second) +
                          " but fact " + to_string(fact) + " has " +
                          std::to_string(fact.args.size()) + " arguments");
  }
  if (entries_.contains(fact)) throw ValidationError("duplicate fact " + to_string(fact));
  index_.add(fact);
  entries_.emplace(std::move(fact), std::move(dist));
}

const MultiplicityDistribution* TIRSTable::find(const Fact& fact) const {
  auto it = entries_.find(fact);
  return it == entries_.end() ? nullptr : &it->second;
}

TIRSTable TIRSTable::restrict_to(const std::set<std::string>& relations) const {
  TIRSTable out;
  for (const auto& [fact, dist] : entries_)
    if (relations.contains(fact.relation)) out.insert(fact, dist);
  return out;
}

TIRSTable TIRSTable::disjoint_union(const TIRSTable& other) const {
  TIRSTable out = *this;
  for (const auto& [fact, dist] : other.entries_) out.insert(fact, dist);
  return out;
}

void TIRSTable::check_compatible(const UCQ& q) const {
  for (const auto& [rel, n] : relation_arities(q)) {
    auto it = arity_.find(rel);
    if (it != arity_.end() && it->second != n) {
      throw ValidationError("query uses " + rel + " with arity " + std::to_string(n) +
                            " but the table has arity " + std::to_string(it->second));
    }
  }
}

void BagInstance::set(const Fact& fact, Count multiplicity) {
  if (multiplicity == 0) {
    mult_.erase(fact);
  } else {
    mult_[fact] = multiplicity;
  }
}

Count BagInstance::multiplicity(const Fact& fact) const {
  auto it = mult_.find(fact);
  return it == mult_.end() ? 0 : it->second;
}

std::set<std::string> active_domain(const TIRSTable& table) {
  std::set<std::string> out;
  for (const auto& [fact, dist] : table.entries())
    for (const auto& a : fact.args) out.insert(a);
  return out;
}

}  // namespace bagpdb
