#include "bagpdb/reduction.hpp"

#include <set>

#include "bagpdb/analysis.hpp"
#include "bagpdb/errors.hpp"

namespace bagpdb {

InflationResult inflate(const TIRSTable& table, const CQ& q, std::size_t m) {
  const QueryAnalysis a = analyze(q);
  if (!a.self_join_free) throw PreconditionError("inflation needs a self-join-free query");
  if (!a.constant_atoms.empty()) throw PreconditionError("inflation needs a query without constant atoms");
  if (a.components.size() != 1) {
    throw PreconditionError("inflation needs a query with exactly one connected component, got " +
                            std::to_string(a.components.size()));
  }
  std::map<std::string, const Atom*> atom_of;
  for (const auto& atom : q.atoms) atom_of.emplace(atom.relation, &atom);

  InflationResult out;
  out.parts.resize(m);
  for (const auto& [fact, dist] : table.entries()) {
    auto it = atom_of.find(fact.relation);
    if (it == atom_of.end()) {
      throw PreconditionError("fact " + to_string(fact) + " uses a relation that is not in the query");
    }
    const Atom& atom = *it->second;
    if (atom.args.size() != fact.args.size()) {
      throw PreconditionError("fact " + to_string(fact) + " does not match the arity of " + to_string(atom));
    }
    for (const auto& c : fact.args) {
      if (c.find('#') != std::string::npos) {
        throw PreconditionError("constant '" + c + "' contains the reserved character '#'");
      }
    }
    for (std::size_t i = 1; i <= m; ++i) {
      Fact copy = fact;
      for (std::size_t p = 0; p < copy.args.size(); ++p) {
        if (!atom.args[p].is_variable()) continue;
        std::string fresh = fact.args[p] + "#" + std::to_string(i);
        out.element_map.emplace(std::make_pair(fact.args[p], i), fresh);
        copy.args[p] = std::move(fresh);
      }
      out.parts[i - 1].insert(copy, dist);
      out.union_table.insert(std::move(copy), dist);
    }
  }
  return out;
}

namespace {

// Sums multinomial(j; n_1..n_k) prod p_l^{n_l} over n_l..n_k, given the
// slots and weight still available.
void y_rec(const std::vector<Rational>& p, Count k, Count l, Count slots, Count budget,
           const Integer& coeff, const Rational& prod, Rational& sum) {
  if (slots == 0) {
    sum += Rational(coeff) * prod;
    return;
  }
  if (l > k || l > budget) return;
  Rational power = prod;
  for (Count n = 0; n <= slots && n * l <= budget; ++n) {
    y_rec(p, k, l + 1, slots - n, budget - n * l, coeff * binomial(slots, n), power, sum);
    power *= p[l];
    if (sgn(power) == 0) break;
  }
}

std::vector<Rational> padded(const std::vector<Rational>& v, Count k) {
  std::vector<Rational> out(k + 1, Rational(0));
  for (std::size_t i = 0; i < v.size() && i <= k; ++i) out[i] = v[i];
  return out;
}

}  // namespace

std::vector<Rational> y_coefficients(const std::vector<Rational>& p, Count k) {
  const auto pp = padded(p, k);
  std::vector<Rational> y(k + 1, Rational(0));
  for (Count j = 0; j <= k; ++j) y_rec(pp, k, 1, j, k, Integer(1), Rational(1), y[j]);
  return y;
}

std::vector<Rational> z_coefficients(const std::vector<Rational>& p, const std::vector<Rational>& q, Count k) {
  const auto qq = padded(q, k);
  std::vector<Rational> z(k + 1, Rational(0));
  z[0] = 1 - qq[0];
  std::map<Count, std::vector<Rational>> y_by_bound;
  for (Count j = 1; j <= k; ++j) {
    for (Count l = 1; l <= k / j; ++l) {
      const Count bound = k / l;
      auto it = y_by_bound.find(bound);
      if (it == y_by_bound.end()) it = y_by_bound.emplace(bound, y_coefficients(p, bound)).first;
      z[j] += qq[l] * it->second[j];
    }
  }
  return z;
}

std::vector<std::vector<Rational>> difference_table(const std::vector<Rational>& values) {
  std::vector<std::vector<Rational>> rows;
  if (values.empty()) return rows;
  rows.push_back(values);
  while (rows.back().size() > 1) {
    const auto& prev = rows.back();
    std::vector<Rational> next(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next[i] = prev[i + 1] - prev[i];
    rows.push_back(std::move(next));
  }
  return rows;
}

LeadingDifference finite_difference_lc(const std::vector<Rational>& values, std::size_t max_degree) {
  if (values.size() < max_degree + 1) {
    throw PreconditionError("finite differences of order " + std::to_string(max_degree) + " need " +
                            std::to_string(max_degree + 1) + " values");
  }
  const auto rows = difference_table(std::vector<Rational>(values.begin(), values.begin() + max_degree + 1));
  for (std::size_t l = max_degree + 1; l-- > 0;) {
    if (sgn(rows[l][0]) != 0) return {l, rows[l][0]};
  }
  return {0, Rational(0)};
}

namespace {

std::set<std::string> relations_of(const std::vector<Atom>& atoms) {
  std::set<std::string> out;
  for (const auto& a : atoms) out.insert(a.relation);
  return out;
}

}  // namespace

Rational solve_component(const TIRSTable& table, const CQ& q, std::size_t component, Count k,
                         const ThresholdOracle& oracle, ComponentTrace* trace, bool finite_support_lambda) {
  table.check_compatible(q);
  const QueryAnalysis a = analyze(q);
  if (!a.self_join_free) throw PreconditionError("query " + to_string(q) + " has a self-join");
  if (component >= a.components.size()) {
    throw PreconditionError("component index " + std::to_string(component) + " out of range (query has " +
                            std::to_string(a.components.size()) + " components)");
  }
  ComponentTrace local;
  ComponentTrace& tr = trace != nullptr ? *trace : local;
  tr = ComponentTrace{};

  // Fix lambda: first distribution of the table, in canonical fact order,
  // that gives positive mass to positive multiplicities.
  const MultiplicityDistribution* lambda = nullptr;
  bool any_nontrivial = false;
  for (const auto& [fact, dist] : table.entries()) {
    if (dist.zero_prob() == 1) continue;
    any_nontrivial = true;
    if (finite_support_lambda && !dist.support_bound()) continue;
    lambda = &dist;
    tr.lambda_fact = to_string(fact);
    break;
  }
  if (!any_nontrivial) {
    tr.exit = ComponentTrace::Exit::Trivial;
    tr.result = 1;
    return tr.result;
  }
  if (lambda == nullptr) {
    throw PreconditionError("no distribution in the table has zero probability below 1 and finite support");
  }

  const Component& target = a.components[component];
  std::vector<Atom> rest = a.constant_atoms;
  for (std::size_t c = 0; c < a.components.size(); ++c) {
    if (c == component) continue;
    rest.insert(rest.end(), a.components[c].atoms.begin(), a.components[c].atoms.end());
  }

  TIRSTable canonical;
  if (rest.empty()) {
    tr.q0 = 0;
  } else {
    for (const auto& atom : rest) {
      Fact f{atom.relation, {}};
      for (const auto& t : atom.args) f.args.push_back(t.is_constant() ? t.name : "cdb_" + t.name);
      canonical.insert(std::move(f), *lambda);
    }
    tr.q0 = 1 - pow(1 - lambda->zero_prob(), rest.size());
  }

  const TIRSTable part = table.restrict_to(relations_of(target.atoms));
  const CQ component_query = target.as_query();
  const UCQ whole(q);
  tr.g.assign(4 * k + 2, Rational(0));
  tr.g[0] = 1 - tr.q0;
  for (Count n = 1; n <= 4 * k + 1; ++n) {
    const InflationResult inflated = inflate(part, component_query, n);
    tr.g[n] = oracle(canonical.disjoint_union(inflated.union_table), whole, k) - tr.q0;
  }
  if (sgn(tr.g[k + 1]) == 0) {
    tr.exit = ComponentTrace::Exit::ZeroAtKPlusOne;
    tr.result = 0;
    return tr.result;
  }

  for (Count x = 0; x <= 2 * k; ++x) {
    tr.h_low.push_back(tr.g[2 * k + x] * tr.g[2 * k - x]);
    tr.h_high.push_back(tr.g[2 * k + 1 + x] * tr.g[2 * k + 1 - x]);
  }
  tr.low = finite_difference_lc(tr.h_low, 2 * k);
  if (sgn(tr.low.value) == 0) {
    throw ArithmeticError("all finite differences of h vanish; the oracle is inconsistent");
  }
  tr.high = {tr.low.degree, difference_table(tr.h_high)[tr.low.degree][0]};
  tr.exit = ComponentTrace::Exit::FiniteDifferences;
  tr.result = rational_sqrt(tr.high.value / tr.low.value);
  return tr.result;
}

Rational zero_from_k(const TIRSTable& table, const CQ& q, Count k, const ThresholdOracle& oracle,
                     bool finite_support_lambda) {
  table.check_compatible(q);
  const QueryAnalysis a = analyze(q);
  if (!a.self_join_free) throw PreconditionError("query " + to_string(q) + " has a self-join");
  Rational nonzero(1);
  for (const auto& atom : a.constant_atoms) {
    const MultiplicityDistribution* d = table.find(ground_fact(atom));
    nonzero *= d == nullptr ? Rational(0) : Rational(1 - d->zero_prob());
    if (sgn(nonzero) == 0) return Rational(1);
  }
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    nonzero *= 1 - solve_component(table, q, i, k, oracle, nullptr, finite_support_lambda);
    if (sgn(nonzero) == 0) return Rational(1);
  }
  return 1 - nonzero;
}

TIRSTable set_to_bag(const std::vector<std::pair<Fact, Rational>>& set_pdb,
                     const std::map<Rational, MultiplicityDistribution>& picker) {
  TIRSTable out;
  for (const auto& [fact, marginal] : set_pdb) {
    auto it = picker.find(marginal);
    if (it == picker.end()) {
      throw PreconditionError("no distribution picked for marginal " + to_string(marginal) + " of " +
                              to_string(fact));
    }
    if (it->second.zero_prob() != 1 - marginal) {
      throw PreconditionError("distribution " + to_string(it->second) + " picked for marginal " +
                              to_string(marginal) + " has zero probability " + to_string(it->second.zero_prob()));
    }
    out.insert(fact, it->second);
  }
  return out;
}

std::pair<TIRSTable, UCQ> subsetsum_table(const std::vector<Count>& x, Count target) {
  if (target == 0) throw PreconditionError("subset-sum target must be positive");
  TIRSTable table;
  const Rational half(1, 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) throw PreconditionError("subset-sum values must be positive");
    table.insert(Fact{"R", {std::to_string(i + 1)}},
                 MultiplicityDistribution::explicit_pmf({{0, half}, {x[i], half}}));
  }
  return {std::move(table), parse_query("EXISTS x . R(x)")};
}

}  // namespace bagpdb
