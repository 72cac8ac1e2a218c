#pragma once

#include <vector>

#include "bagpdb/query.hpp"
#include "bagpdb/rational.hpp"
#include "bagpdb/table.hpp"

namespace bagpdb {

/// E(#_T Q): sum over disjuncts and valuations of the product of raw moments
/// E(X_f^nu) of the grounded facts.
Rational expectation(const TIRSTable& table, const UCQ& q);

/// E(#_T Q_1 * ... * #_T Q_n). Grounding profiles of the factors are merged,
/// so a fact used by several factors contributes one raw moment of the summed
/// exponent.
Rational product_expectation(const TIRSTable& table, const std::vector<CQ>& qs);

/// Var(#_T Q), summing E(X_a X_b) - E(X_a) E(X_b) over all ordered pairs of
/// groundings (across disjuncts) that share a fact.
Rational variance(const TIRSTable& table, const UCQ& q);

/// E((#_T Q)^order) by multinomial expansion over the disjuncts.
Rational raw_moment_of_query(const TIRSTable& table, const UCQ& q, unsigned order);

/// E((#_T Q - E(#_T Q))^order).
Rational central_moment_of_query(const TIRSTable& table, const UCQ& q, unsigned order);

struct Interval {
  Rational lo;
  Rational hi;
};

/// Bounds on Pr(#_T Q <= k) from expectation and variance alone, using the
/// one-sided (Cantelli) form of Chebyshev's inequality on whichever side k
/// lies. Always contains the true value.
Interval chebyshev_bound(const TIRSTable& table, const UCQ& q, Count k);

}  // namespace bagpdb
