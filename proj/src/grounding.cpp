#include "bagpdb/grounding.hpp"

#include <map>

#include "bagpdb/errors.hpp"

namespace bagpdb {

namespace {

class Matcher {
 public:
  Matcher(const CQ& q, const FactIndex& index, const std::function<void(const Binding&)>& fn)
      : q_(q), index_(index), fn_(fn), done_(q.atoms.size(), false) {}

  void run() { step(0); }

 private:
  // Prefer the atom with the most already-determined positions; the choice
  // depends only on which atoms are done, so each valuation is visited once.
  std::size_t pick_next() const {
    std::size_t best = q_.atoms.size();
    int best_score = -1;
    for (std::size_t i = 0; i < q_.atoms.size(); ++i) {
      if (done_[i]) continue;
      int score = 0;
      for (const auto& t : q_.atoms[i].args)
        if (t.is_constant() || binding_.contains(t.name)) ++score;
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  void step(std::size_t depth) {
    if (depth == q_.atoms.size()) {
      fn_(binding_);
      return;
    }
    const std::size_t ai = pick_next();
    const Atom& atom = q_.atoms[ai];
    done_[ai] = true;
    for (const Fact& fact : index_.candidates(atom, binding_)) {
      std::vector<std::string> newly_bound;
      if (unify(atom, fact, newly_bound)) step(depth + 1);
      for (const auto& v : newly_bound) binding_.erase(v);
    }
    done_[ai] = false;
  }

  bool unify(const Atom& atom, const Fact& fact, std::vector<std::string>& newly_bound) {
    if (fact.args.size() != atom.args.size()) return false;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      const Term& t = atom.args[i];
      if (t.is_constant()) {
        if (t.name != fact.args[i]) return false;
        continue;
      }
      auto it = binding_.find(t.name);
      if (it != binding_.end()) {
        if (it->second != fact.args[i]) return false;
      } else {
        binding_.emplace(t.name, fact.args[i]);
        newly_bound.push_back(t.name);
      }
    }
    return true;
  }

  const CQ& q_;
  const FactIndex& index_;
  const std::function<void(const Binding&)>& fn_;
  std::vector<bool> done_;
  Binding binding_;
};

Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("answer count overflows 64 bits");
  return r;
}

Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("answer count overflows 64 bits");
  return r;
}

}  // namespace

void for_each_match(const CQ& q, const FactIndex& index, const std::function<void(const Binding&)>& fn) {
  Matcher(q, index, fn).run();
}

std::vector<GroundingProfile> matching_groundings(const CQ& q, const TIRSTable& table) {
  std::vector<GroundingProfile> out;
  for_each_match(q, table.index(), [&](const Binding& b) {
    std::map<std::string, std::string> valuation(b.begin(), b.end());
    out.push_back(substitute(q, valuation));
  });
  return out;
}

Count eval_instance(const BagInstance& instance, const UCQ& q) {
  FactIndex index;
  for (const auto& [fact, m] : instance.multiplicities()) index.add(fact);
  Count total = 0;
  for (const auto& cq : q.disjuncts) {
    for_each_match(cq, index, [&](const Binding& b) {
      std::map<std::string, std::string> valuation(b.begin(), b.end());
      Count term = 1;
      for (const auto& [fact, nu] : substitute(cq, valuation)) {
        const Count m = instance.multiplicity(fact);
        for (unsigned i = 0; i < nu; ++i) term = checked_mul(term, m);
      }
      total = checked_add(total, term);
    });
  }
  return total;
}

}  // namespace bagpdb
