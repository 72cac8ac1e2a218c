#include "bagpdb/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "bagpdb/analysis.hpp"
#include "bagpdb/errors.hpp"

namespace bagpdb {

std::uint64_t default_world_cap() {
  if (const char* env = std::getenv("BAGPDB_WORLD_CAP")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1'000'000;
}

namespace {

struct Support {
  std::vector<Count> values;
  std::vector<Rational> probs;
};

std::vector<Support> finite_supports(const std::vector<const MultiplicityDistribution*>& dists,
                                     const std::vector<Fact>& facts, std::uint64_t cap) {
  std::vector<Support> out;
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const auto bound = dists[i]->support_bound();
    if (!bound) {
      throw EnumerationError("fact " + to_string(facts[i]) +
                             " has infinite support; world enumeration needs finite supports");
    }
    Support s;
    for (Count v = 0; v <= *bound; ++v) {
      Rational p = dists[i]->pmf(v);
      if (sgn(p) > 0) {
        s.values.push_back(v);
        s.probs.push_back(std::move(p));
      }
    }
    if (__builtin_mul_overflow(product, s.values.size(), &product) || product > cap) {
      throw EnumerationError("world enumeration exceeds the cap of " + std::to_string(cap) + " worlds");
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Odometer over the per-fact supports.
template <class Fn>
void for_each_assignment(const std::vector<Support>& supports, Fn&& fn) {
  const std::size_t n = supports.size();
  std::vector<std::size_t> pos(n, 0);
  std::vector<Count> mult(n);
  while (true) {
    Rational prob(1);
    for (std::size_t i = 0; i < n; ++i) {
      mult[i] = supports[i].values[pos[i]];
      prob *= supports[i].probs[pos[i]];
    }
    fn(static_cast<const std::vector<Count>&>(mult), static_cast<const Rational&>(prob));
    std::size_t i = 0;
    while (i < n && ++pos[i] == supports[i].values.size()) pos[i++] = 0;
    if (i == n) return;
  }
}

struct Monomial {
  Count coef = 1;
  std::vector<std::pair<std::size_t, unsigned>> factors;  // (fact index, exponent)
};

/// Literal valuation enumeration over (adom(T) ∪ consts(Q))^m. Valuations that
/// hit a fact outside the table are dropped: such a fact has multiplicity 0 in
/// every world.
std::vector<Monomial> literal_monomials(const TIRSTable& table, const UCQ& q,
                                        const std::map<Fact, std::size_t>& fact_id) {
  std::set<std::string> dom = active_domain(table);
  for (const auto& c : query_constants(q)) dom.insert(c);
  const std::vector<std::string> domain(dom.begin(), dom.end());

  std::vector<Monomial> out;
  for (const auto& cq : q.disjuncts) {
    const std::size_t m = cq.bound_vars.size();
    if (m > 0 && domain.empty()) continue;
    std::vector<std::size_t> pos(m, 0);
    std::map<std::string, std::string> valuation;
    while (true) {
      for (std::size_t i = 0; i < m; ++i) valuation[cq.bound_vars[i]] = domain[pos[i]];
      Monomial mono;
      bool present = true;
      for (const auto& [fact, nu] : substitute(cq, valuation)) {
        auto it = fact_id.find(fact);
        if (it == fact_id.end()) {
          present = false;
          break;
        }
        mono.factors.emplace_back(it->second, nu);
      }
      if (present) out.push_back(std::move(mono));
      std::size_t i = 0;
      while (i < m && ++pos[i] == domain.size()) pos[i++] = 0;
      if (i == m) break;
    }
  }
  return out;
}

Count checked_pow_mul(Count acc, Count base, unsigned exp) {
  for (unsigned e = 0; e < exp; ++e) {
    if (__builtin_mul_overflow(acc, base, &acc)) throw ArithmeticError("answer count overflows 64 bits");
  }
  return acc;
}

}  // namespace

void for_each_world(const TIRSTable& table,
                    const std::function<void(const BagInstance&, const Rational&)>& fn,
                    std::uint64_t cap) {
  std::vector<Fact> facts;
  std::vector<const MultiplicityDistribution*> dists;
  for (const auto& [f, d] : table.entries()) {
    facts.push_back(f);
    dists.push_back(&d);
  }
  const auto supports = finite_supports(dists, facts, cap);
  for_each_assignment(supports, [&](const std::vector<Count>& mult, const Rational& prob) {
    BagInstance world;
    for (std::size_t i = 0; i < facts.size(); ++i) world.set(facts[i], mult[i]);
    fn(world, prob);
  });
}

std::vector<World> enumerate_worlds(const TIRSTable& table, std::uint64_t cap) {
  std::vector<World> out;
  for_each_world(table, [&](const BagInstance& w, const Rational& p) { out.push_back({w, p}); }, cap);
  return out;
}

CountDistribution::CountDistribution(std::map<Count, Rational> probs) : probs_(std::move(probs)) {
  for (auto it = probs_.begin(); it != probs_.end();) {
    it = sgn(it->second) == 0 ? probs_.erase(it) : std::next(it);
  }
}

Rational CountDistribution::exactly(Count k) const {
  auto it = probs_.find(k);
  return it == probs_.end() ? Rational(0) : it->second;
}

Rational CountDistribution::at_most(Count k) const {
  Rational s(0);
  for (const auto& [v, p] : probs_) {
    if (v > k) break;
    s += p;
  }
  return s;
}

Rational CountDistribution::at_least(Count k) const {
  Rational s(0);
  for (auto it = probs_.lower_bound(k); it != probs_.end(); ++it) s += it->second;
  return s;
}

Rational CountDistribution::raw_moment(unsigned order) const {
  Rational s(0);
  for (const auto& [v, p] : probs_) s += pow(Rational(Integer(static_cast<unsigned long>(v))), order) * p;
  return s;
}

Rational CountDistribution::central_moment(unsigned order) const {
  const Rational mean = expectation();
  Rational s(0);
  for (const auto& [v, p] : probs_) s += pow(Rational(Integer(static_cast<unsigned long>(v))) - mean, order) * p;
  return s;
}

Rational CountDistribution::total() const {
  Rational s(0);
  for (const auto& [v, p] : probs_) s += p;
  return s;
}

CountDistribution oracle_count_distribution(const TIRSTable& table, const UCQ& q, std::uint64_t cap) {
  std::vector<Fact> facts;
  std::vector<const MultiplicityDistribution*> dists;
  std::map<Fact, std::size_t> fact_id;
  for (const auto& [f, d] : table.entries()) {
    fact_id.emplace(f, facts.size());
    facts.push_back(f);
    dists.push_back(&d);
  }
  const auto supports = finite_supports(dists, facts, cap);
  const auto monomials = literal_monomials(table, q, fact_id);

  std::map<Count, Rational> probs;
  for_each_assignment(supports, [&](const std::vector<Count>& mult, const Rational& prob) {
    Count count = 0;
    for (const auto& mono : monomials) {
      Count term = mono.coef;
      for (const auto& [fi, nu] : mono.factors) term = checked_pow_mul(term, mult[fi], nu);
      if (__builtin_add_overflow(count, term, &count)) throw ArithmeticError("answer count overflows 64 bits");
    }
    probs[count] += prob;
  });
  return CountDistribution(std::move(probs));
}

namespace {

/// Case-splitting search for Pr(count = j), j <= k.
class ThresholdSearch {
 public:
  ThresholdSearch(std::vector<Support> supports, Count k, std::uint64_t node_cap)
      : supports_(std::move(supports)), k_(k), node_cap_(node_cap) {}

  std::vector<Rational> solve(std::vector<Monomial> monos) {
    if (++nodes_ > node_cap_) {
      throw EnumerationError("threshold oracle exceeded its budget of " + std::to_string(node_cap_) +
                             " search nodes");
    }
    const Count over = k_ + 1;
    Count offset = 0;
    std::vector<Monomial> live;
    for (auto& m : monos) {
      if (m.coef == 0) continue;
      if (m.factors.empty()) {
        offset = std::min<Count>(over, offset + m.coef);
      } else {
        live.push_back(std::move(m));
      }
    }
    std::vector<Rational> result(k_ + 1, Rational(0));
    if (offset > k_) return result;
    if (live.empty()) {
      result[offset] = 1;
      return result;
    }

    // Group monomials that (transitively) share a fact.
    const auto groups = split_independent(live);
    std::vector<Rational> acc;
    if (groups.size() > 1) {
      acc.assign(k_ + 1, Rational(0));
      acc[0] = 1;
      for (const auto& g : groups) {
        std::vector<Monomial> part;
        for (std::size_t i : g) part.push_back(live[i]);
        acc = convolve(acc, solve(std::move(part)));
      }
    } else {
      acc = branch(live);
    }
    for (Count j = 0; j + offset <= k_; ++j) result[j + offset] = acc[j];
    return result;
  }

 private:
  std::vector<Rational> branch(const std::vector<Monomial>& live) {
    std::map<std::size_t, std::size_t> occurrences;
    for (const auto& m : live)
      for (const auto& [fi, nu] : m.factors) ++occurrences[fi];
    std::size_t pick = occurrences.begin()->first;
    for (const auto& [fi, n] : occurrences)
      if (n > occurrences[pick]) pick = fi;

    std::vector<Rational> acc(k_ + 1, Rational(0));
    const Support& s = supports_[pick];
    for (std::size_t vi = 0; vi < s.values.size(); ++vi) {
      const Count v = s.values[vi];
      std::vector<Monomial> next;
      next.reserve(live.size());
      for (const auto& m : live) {
        Monomial nm;
        nm.coef = m.coef;
        for (const auto& [fi, nu] : m.factors) {
          if (fi != pick) {
            nm.factors.emplace_back(fi, nu);
            continue;
          }
          for (unsigned e = 0; e < nu && nm.coef != 0; ++e) {
            nm.coef = saturating_mul(nm.coef, v);
          }
        }
        if (nm.coef != 0) next.push_back(std::move(nm));
      }
      const auto sub = solve(std::move(next));
      for (Count j = 0; j <= k_; ++j) acc[j] += s.probs[vi] * sub[j];
    }
    return acc;
  }

  Count saturating_mul(Count a, Count b) const {
    Count r;
    if (__builtin_mul_overflow(a, b, &r) || r > k_ + 1) return k_ + 1;
    return r;
  }

  std::vector<std::vector<std::size_t>> split_independent(const std::vector<Monomial>& live) const {
    std::vector<std::size_t> parent(live.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::map<std::size_t, std::size_t> owner;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (const auto& [fi, nu] : live[i].factors) {
        auto [it, fresh] = owner.emplace(fi, i);
        if (!fresh) {
          const auto a = find(it->second);
          const auto b = find(i);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < live.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
  }

  std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    std::vector<Rational> r(k_ + 1, Rational(0));
    for (Count i = 0; i <= k_; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (Count j = 0; i + j <= k_; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }

  std::vector<Support> supports_;
  Count k_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Rational oracle_at_most(const TIRSTable& table, const UCQ& q, Count k, std::uint64_t node_cap) {
  std::map<Fact, std::size_t> fact_id;
  std::vector<Support> supports;
  for (const auto& [f, d] : table.entries()) {
    fact_id.emplace(f, supports.size());
    // Values 0..k exactly, everything above k lumped into k+1.
    Support s;
    Rational mass(0);
    for (Count v = 0; v <= k; ++v) {
      Rational p = d.pmf(v);
      mass += p;
      if (sgn(p) > 0) {
        s.values.push_back(v);
        s.probs.push_back(std::move(p));
      }
    }
    if (mass < 1) {
      s.values.push_back(k + 1);
      s.probs.push_back(1 - mass);
    }
    supports.push_back(std::move(s));
  }
  auto monomials = literal_monomials(table, q, fact_id);
  ThresholdSearch search(std::move(supports), k, node_cap);
  const auto dist = search.solve(std::move(monomials));
  Rational total(0);
  for (const auto& p : dist) total += p;
  return total;
}

}  // namespace bagpdb
