#include "bagpdb/pqe.hpp"

#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "bagpdb/analysis.hpp"
#include "bagpdb/errors.hpp"
#include "bagpdb/grounding.hpp"
#include "bagpdb/oracle.hpp"

namespace bagpdb {

namespace {

using Dist = std::vector<Rational>;

void require_hierarchical_sjf(const QueryAnalysis& a, const CQ& q) {
  if (!a.self_join_free) throw PreconditionError("query " + to_string(q) + " has a self-join");
  if (!a.hierarchical) {
    throw PreconditionError("query " + to_string(q) + " is not hierarchical (variables " +
                            a.non_hierarchical_pair.first + " and " + a.non_hierarchical_pair.second + ")");
  }
}

/// Distribution of a product of independent counts, truncated at k.
Dist multiply(const Dist& f, const Dist& g) {
  const std::size_t n = f.size();
  Dist r(n, Rational(0));
  r[0] = f[0] + g[0] - f[0] * g[0];
  for (std::size_t a = 1; a < n; ++a) {
    if (sgn(f[a]) == 0) continue;
    for (std::size_t b = 1; a * b < n; ++b) r[a * b] += f[a] * g[b];
  }
  return r;
}

/// Distribution of a sum of independent counts, truncated at k.
Dist add(const Dist& f, const Dist& g) {
  const std::size_t n = f.size();
  Dist r(n, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(f[a]) == 0) continue;
    for (std::size_t b = 0; a + b < n; ++b) r[a + b] += f[a] * g[b];
  }
  return r;
}

Dist unit(Count k, Count value) {
  Dist d(k + 1, Rational(0));
  if (value <= k) d[value] = 1;
  return d;
}

class HierarchicalSolver {
 public:
  HierarchicalSolver(const TIRSTable& table, Count k) : table_(table), k_(k) {}

  Dist solve(const CQ& q) {
    const std::string key = to_string(q);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Dist result = compute(q);
    memo_.emplace(key, result);
    return result;
  }

 private:
  Dist compute(const CQ& q) {
    if (q.atoms.empty()) return unit(k_, 1);
    const QueryAnalysis a = analyze(q);
    Dist acc = unit(k_, 1);
    for (const auto& atom : a.constant_atoms) acc = multiply(acc, constant_atom(atom));
    for (const auto& comp : a.components) acc = multiply(acc, component(comp));
    return acc;
  }

  Dist constant_atom(const Atom& atom) {
    const MultiplicityDistribution* d = table_.find(ground_fact(atom));
    if (d == nullptr) return unit(k_, 0);
    Dist r(k_ + 1);
    for (Count j = 0; j <= k_; ++j) r[j] = d->pmf(j);
    return r;
  }

  Dist component(const Component& comp) {
    const std::string x = maximal_variable(comp);
    // x occurs in every atom, so its candidate values come from any one atom;
    // values outside this set leave some atom unmatched and count 0.
    const Atom& anchor = comp.atoms.front();
    std::set<std::string> values;
    for (const Fact& fact : table_.index().facts_of(anchor.relation)) {
      if (fact.args.size() != anchor.args.size()) continue;
      const std::string* value = nullptr;
      bool ok = true;
      for (std::size_t i = 0; i < anchor.args.size() && ok; ++i) {
        const Term& t = anchor.args[i];
        if (t.is_constant()) {
          ok = t.name == fact.args[i];
        } else if (t.name == x) {
          if (value == nullptr) value = &fact.args[i];
          ok = *value == fact.args[i];
        }
      }
      if (ok && value != nullptr) values.insert(*value);
    }
    const CQ cq = comp.as_query();
    Dist acc = unit(k_, 0);
    for (const auto& v : values) acc = add(acc, solve(bind_variable(cq, x, v)));
    return acc;
  }

  const TIRSTable& table_;
  Count k_;
  std::unordered_map<std::string, Dist> memo_;
};

}  // namespace

std::vector<Rational> point_distribution(const TIRSTable& table, const CQ& q, Count k) {
  table.check_compatible(q);
  require_hierarchical_sjf(analyze(q), q);
  return HierarchicalSolver(table, k).solve(q);
}

Rational pqe_point_hierarchical(const TIRSTable& table, const CQ& q, Count k) {
  return point_distribution(table, q, k)[k];
}

Rational pqe_hierarchical(const TIRSTable& table, const CQ& q, Count k) {
  Rational s(0);
  for (const auto& p : point_distribution(table, q, k)) s += p;
  return s;
}

bool is_degenerate(const TIRSTable& table) {
  for (const auto& [fact, d] : table.entries()) {
    const Rational z = d.zero_prob();
    if (sgn(z) != 0 && z != 1) return false;
  }
  return true;
}

Rational pqe_degenerate(const TIRSTable& table, const UCQ& q, Count k) {
  table.check_compatible(q);
  TIRSTable present;
  for (const auto& [fact, d] : table.entries()) {
    const Rational z = d.zero_prob();
    if (sgn(z) != 0 && z != 1) {
      throw PreconditionError("fact " + to_string(fact) + " has zero probability strictly between 0 and 1");
    }
    if (sgn(z) == 0) present.insert(fact, d);
  }

  // Every (disjunct, valuation) pair grounding into present facts adds at
  // least 1 to the count.
  Count good = 0;
  std::set<Fact> reachable;
  for (const auto& cq : q.disjuncts) {
    for_each_match(cq, present.index(), [&](const Binding& b) {
      ++good;
      if (good > k) return;
      const std::map<std::string, std::string> valuation(b.begin(), b.end());
      for (const auto& [fact, nu] : substitute(cq, valuation)) reachable.insert(fact);
    });
    if (good > k) return Rational(0);
  }

  std::vector<Fact> facts(reachable.begin(), reachable.end());
  std::vector<const MultiplicityDistribution*> dists;
  BagInstance world;
  for (const auto& f : facts) {
    dists.push_back(present.find(f));
    world.set(f, 1);
  }
  // A multiplicity above k on a reachable fact already pushes the count past
  // k, so only 1..k need to be enumerated.
  Rational total(0);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& prob) {
    if (i == facts.size()) {
      if (eval_instance(world, q) <= k) total += prob;
      return;
    }
    for (Count v = 1; v <= k; ++v) {
      const Rational p = dists[i]->pmf(v);
      if (sgn(p) == 0) continue;
      world.set(facts[i], v);
      rec(i + 1, prob * p);
    }
    world.set(facts[i], 1);
  };
  rec(0, Rational(1));
  return total;
}

Mode parse_mode(std::string_view text) {
  if (text == "at_most") return Mode::AtMost;
  if (text == "exactly") return Mode::Exactly;
  if (text == "at_least") return Mode::AtLeast;
  throw ValidationError("unknown mode '" + std::string(text) + "' (expected at_most, exactly or at_least)");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::AtMost: return "at_most";
    case Mode::Exactly: return "exactly";
    case Mode::AtLeast: return "at_least";
  }
  return "";
}

namespace {

Rational at_most(const TIRSTable& table, const UCQ& q, Count k, bool fallback) {
  if (is_degenerate(table)) return pqe_degenerate(table, q, k);
  std::string failed;
  if (q.disjuncts.size() != 1) {
    failed = "query is a union of " + std::to_string(q.disjuncts.size()) + " conjunctive queries";
  } else {
    const QueryAnalysis a = analyze(q.disjuncts.front());
    if (!a.self_join_free) {
      failed = "query is not self-join-free";
    } else if (!a.hierarchical) {
      failed = "query is not hierarchical (variables " + a.non_hierarchical_pair.first + " and " +
               a.non_hierarchical_pair.second + ")";
    } else {
      return pqe_hierarchical(table, q.disjuncts.front(), k);
    }
  }
  if (fallback) return oracle_at_most(table, q, k);
  throw IntractableError(failed + "; no polynomial-time algorithm applies (enable the fallback to use exhaustive search)");
}

}  // namespace

Rational pqe(const TIRSTable& table, const UCQ& q, Count k, Mode mode, bool fallback) {
  table.check_compatible(q);
  switch (mode) {
    case Mode::AtMost:
      return at_most(table, q, k, fallback);
    case Mode::Exactly:
      if (k == 0) return at_most(table, q, 0, fallback);
      return at_most(table, q, k, fallback) - at_most(table, q, k - 1, fallback);
    case Mode::AtLeast:
      if (k == 0) return Rational(1);
      return 1 - at_most(table, q, k - 1, fallback);
  }
  return Rational(0);
}

}  // namespace bagpdb
