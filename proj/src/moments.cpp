#include "bagpdb/moments.hpp"

#include <map>

#include "bagpdb/grounding.hpp"

namespace bagpdb {

namespace {

/// Raw moments of fact multiplicities, memoized per (fact, order).
class MomentCache {
 public:
  explicit MomentCache(const TIRSTable& table) : table_(table) {}

  const Rational& get(const Fact& fact, unsigned order) {
    auto key = std::make_pair(fact, order);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const MultiplicityDistribution* d = table_.find(fact);
    Rational value = d != nullptr ? d->raw_moment(order) : Rational(order == 0 ? 1 : 0);
    return cache_.emplace(std::move(key), std::move(value)).first->second;
  }

  Rational profile_moment(const GroundingProfile& profile) {
    Rational r(1);
    for (const auto& [fact, nu] : profile) {
      r *= get(fact, nu);
      if (sgn(r) == 0) break;
    }
    return r;
  }

 private:
  const TIRSTable& table_;
  std::map<std::pair<Fact, unsigned>, Rational> cache_;
};

GroundingProfile merge(const GroundingProfile& a, const GroundingProfile& b) {
  GroundingProfile out = a;
  for (const auto& [fact, nu] : b) out[fact] += nu;
  return out;
}

bool share_fact(const GroundingProfile& a, const GroundingProfile& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first == j->first) return true;
    if (i->first < j->first) ++i; else ++j;
  }
  return false;
}

void product_rec(const std::vector<std::vector<GroundingProfile>>& groundings, std::size_t i,
                 const GroundingProfile& acc, MomentCache& cache, Rational& sum) {
  if (i == groundings.size()) {
    sum += cache.profile_moment(acc);
    return;
  }
  for (const auto& g : groundings[i]) product_rec(groundings, i + 1, merge(acc, g), cache, sum);
}

// Enumerates count vectors n with sum `remaining` over indices i..N-1.
void multiset_rec(const std::vector<CQ>& disjuncts, std::size_t i, unsigned remaining,
                  std::vector<CQ>& chosen, const Integer& coeff, const TIRSTable& table, Rational& sum) {
  if (i + 1 == disjuncts.size()) {
    for (unsigned r = 0; r < remaining; ++r) chosen.push_back(disjuncts[i]);
    sum += Rational(coeff) * product_expectation(table, chosen);
    chosen.resize(chosen.size() - remaining);
    return;
  }
  for (unsigned n = 0; n <= remaining; ++n) {
    // coeff tracks the multinomial coefficient: choose which of the remaining slots go to i.
    const Integer c = coeff * binomial(remaining, n);
    for (unsigned r = 0; r < n; ++r) chosen.push_back(disjuncts[i]);
    multiset_rec(disjuncts, i + 1, remaining - n, chosen, c, table, sum);
    chosen.resize(chosen.size() - n);
  }
}

}  // namespace

Rational expectation(const TIRSTable& table, const UCQ& q) {
  table.check_compatible(q);
  MomentCache cache(table);
  Rational sum(0);
  for (const auto& cq : q.disjuncts) {
    for_each_match(cq, table.index(), [&](const Binding& b) {
      const std::map<std::string, std::string> valuation(b.begin(), b.end());
      sum += cache.profile_moment(substitute(cq, valuation));
    });
  }
  return sum;
}

Rational product_expectation(const TIRSTable& table, const std::vector<CQ>& qs) {
  std::vector<std::vector<GroundingProfile>> groundings;
  groundings.reserve(qs.size());
  for (const auto& cq : qs) {
    table.check_compatible(cq);
    groundings.push_back(matching_groundings(cq, table));
    if (groundings.back().empty()) return Rational(0);
  }
  MomentCache cache(table);
  Rational sum(0);
  product_rec(groundings, 0, {}, cache, sum);
  return sum;
}

Rational variance(const TIRSTable& table, const UCQ& q) {
  table.check_compatible(q);
  std::vector<GroundingProfile> all;
  for (const auto& cq : q.disjuncts) {
    auto g = matching_groundings(cq, table);
    all.insert(all.end(), std::make_move_iterator(g.begin()), std::make_move_iterator(g.end()));
  }
  MomentCache cache(table);
  std::vector<Rational> single;
  single.reserve(all.size());
  for (const auto& g : all) single.push_back(cache.profile_moment(g));

  // Groundings that share no fact are independent and contribute nothing.
  std::map<Fact, std::vector<std::size_t>> users;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& [fact, nu] : all[i]) users[fact].push_back(i);

  Rational sum(0);
  std::vector<bool> seen(all.size(), false);
  std::vector<std::size_t> partners;
  for (std::size_t a = 0; a < all.size(); ++a) {
    partners.clear();
    for (const auto& [fact, nu] : all[a]) {
      for (std::size_t b : users[fact]) {
        if (!seen[b]) {
          seen[b] = true;
          partners.push_back(b);
        }
      }
    }
    for (std::size_t b : partners) {
      seen[b] = false;
      if (!share_fact(all[a], all[b])) continue;
      sum += cache.profile_moment(merge(all[a], all[b])) - single[a] * single[b];
    }
  }
  return sum;
}

Rational raw_moment_of_query(const TIRSTable& table, const UCQ& q, unsigned order) {
  if (order == 0) return Rational(1);
  if (q.disjuncts.empty()) return Rational(0);
  std::vector<CQ> chosen;
  Rational sum(0);
  multiset_rec(q.disjuncts, 0, order, chosen, Integer(1), table, sum);
  return sum;
}

Rational central_moment_of_query(const TIRSTable& table, const UCQ& q, unsigned order) {
  const Rational mean = expectation(table, q);
  Rational sum(0);
  for (unsigned i = 0; i <= order; ++i) {
    Rational term = Rational(binomial(order, i)) * pow(-mean, order - i);
    if (sgn(term) == 0) continue;
    sum += term * raw_moment_of_query(table, q, i);
  }
  return sum;
}

Interval chebyshev_bound(const TIRSTable& table, const UCQ& q, Count k) {
  const Rational e = expectation(table, q);
  const Rational v = variance(table, q);
  const Rational kk(Integer(static_cast<unsigned long>(k)));
  if (sgn(v) == 0) {
    // The count equals its mean almost surely.
    return kk >= e ? Interval{Rational(1), Rational(1)} : Interval{Rational(0), Rational(0)};
  }
  if (kk < e) {
    // Pr(X <= k) = Pr(X - E <= -t) <= V / (V + t^2)
    const Rational t = e - kk;
    Rational hi = v / (v + t * t);
    if (hi > 1) hi = 1;
    return {Rational(0), hi};
  }
  // Pr(X > k) = Pr(X - E >= k + 1 - E) <= V / (V + t^2)
  const Rational t = kk + 1 - e;
  Rational lo = 1 - v / (v + t * t);
  if (sgn(lo) < 0) lo = 0;
  return {lo, Rational(1)};
}

}  // namespace bagpdb
