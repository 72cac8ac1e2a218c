#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bagpdb/query.hpp"
#include "bagpdb/rational.hpp"
#include "bagpdb/table.hpp"

namespace bagpdb {

/// World-enumeration cap: BAGPDB_WORLD_CAP when set to a positive integer,
/// otherwise 10^6.
std::uint64_t default_world_cap();

/// Visits every positive-probability world of the table with its exact
/// probability. Throws EnumerationError if some distribution has infinite
/// support or the number of worlds (product over facts of the number of
/// positive-probability multiplicities) exceeds `cap`.
void for_each_world(const TIRSTable& table,
                    const std::function<void(const BagInstance&, const Rational&)>& fn,
                    std::uint64_t cap = default_world_cap());

struct World {
  BagInstance instance;
  Rational probability;
};

std::vector<World> enumerate_worlds(const TIRSTable& table, std::uint64_t cap = default_world_cap());

/// Exact distribution of an answer count.
class CountDistribution {
 public:
  CountDistribution() = default;
  explicit CountDistribution(std::map<Count, Rational> probs);

  const std::map<Count, Rational>& probabilities() const noexcept { return probs_; }

  Rational exactly(Count k) const;
  Rational at_most(Count k) const;
  Rational at_least(Count k) const;
  Rational raw_moment(unsigned order) const;
  Rational central_moment(unsigned order) const;
  Rational expectation() const { return raw_moment(1); }
  Rational variance() const { return central_moment(2); }
  Rational total() const;

 private:
  std::map<Count, Rational> probs_;
};

/// Distribution of #_T Q by exhaustive world enumeration. Each world is
/// evaluated literally over every valuation in
/// (adom(T) ∪ query constants)^m; the result is the ground truth the
/// engines are tested against.
CountDistribution oracle_count_distribution(const TIRSTable& table, const UCQ& q,
                                            std::uint64_t cap = default_world_cap());

/// Pr(#_T Q <= k) by exhaustive case splitting over fact multiplicities, with
/// two exact shortcuts: multiplicities above k are lumped into one case (any
/// live monomial containing such a fact already exceeds k), and monomials that
/// share no fact are treated as independent sums. Accepts infinite supports.
/// Throws EnumerationError once more than `node_cap` search nodes are used.
Rational oracle_at_most(const TIRSTable& table, const UCQ& q, Count k,
                        std::uint64_t node_cap = 50'000'000);

}  // namespace bagpdb
