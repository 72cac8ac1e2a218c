#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bagpdb/query.hpp"
#include "bagpdb/rational.hpp"
#include "bagpdb/table.hpp"

namespace bagpdb {

/// Inflation of order m of a table for a single-component query.
struct InflationResult {
  std::vector<TIRSTable> parts;
  TIRSTable union_table;
  /// (original constant, copy index 1..m) -> fresh constant
  std::map<std::pair<std::string, std::size_t>, std::string> element_map;
};

/// Copies every fact m times, replacing the values at variable positions of
/// its (unique) query atom by fresh constants "<value>#<i>"; constant
/// positions keep their values. Throws PreconditionError unless q is
/// self-join-free with exactly one component and no constant atoms, every
/// fact of the table uses a relation of q, and no constant contains '#'.
InflationResult inflate(const TIRSTable& table, const CQ& q, std::size_t m);

/// (y_0, ..., y_k) with Pr(X_1 + ... + X_n <= k) = sum_j C(n,j) p_0^(n-j) y_j
/// for i.i.d. X_i with point probabilities p (p[j] = Pr(X = j)).
std::vector<Rational> y_coefficients(const std::vector<Rational>& p, Count k);

/// (z_0, ..., z_k) with z_0 = 1 - q_0 and
/// Pr(Y (X_1 + ... + X_n) <= k) = q_0 + sum_j C(n,j) p_0^(n-j) z_j.
std::vector<Rational> z_coefficients(const std::vector<Rational>& p, const std::vector<Rational>& q, Count k);

/// Rows Δ^0 f, Δ^1 f, ... of the difference table of `values`.
std::vector<std::vector<Rational>> difference_table(const std::vector<Rational>& values);

struct LeadingDifference {
  std::size_t degree = 0;
  Rational value;  // Δ^degree f(0) = degree! * lc(f)
};

/// Largest l <= max_degree with Δ^l f(0) != 0, scanning downwards; (0, 0) for
/// the zero polynomial. `values` must hold f(0..max_degree).
LeadingDifference finite_difference_lc(const std::vector<Rational>& values, std::size_t max_degree);

/// Pr(#_T Q <= k), supplied from outside.
using ThresholdOracle = std::function<Rational(const TIRSTable&, const UCQ&, Count)>;

/// Intermediate values of one solve_component run.
struct ComponentTrace {
  enum class Exit { Trivial, ZeroAtKPlusOne, FiniteDifferences };
  Exit exit = Exit::Trivial;
  std::string lambda_fact;  // fact whose distribution was used for the canonical database
  Rational q0;
  std::vector<Rational> g;  // g(0..4k+1)
  std::vector<Rational> h_low;   // h_{2k}(0..2k)
  std::vector<Rational> h_high;  // h_{2k+1}(0..2k)
  LeadingDifference low;
  LeadingDifference high;  // at the same degree as `low`
  Rational result;
};

/// Pr(#_{T_i} Q_i = 0) for component `component` (0-based, in query order)
/// using only calls to a k-threshold oracle for the whole query.
/// With `finite_support_lambda`, the distribution reused for the canonical
/// database must have finite support.
Rational solve_component(const TIRSTable& table, const CQ& q, std::size_t component, Count k,
                         const ThresholdOracle& oracle, ComponentTrace* trace = nullptr,
                         bool finite_support_lambda = false);

/// Pr(#_T Q = 0) from the constant atoms and solve_component on every component.
Rational zero_from_k(const TIRSTable& table, const CQ& q, Count k, const ThresholdOracle& oracle,
                     bool finite_support_lambda = false);

/// Bag table whose deduplication is the given tuple-independent set PDB:
/// each fact gets picker[marginal], which must have zero probability
/// 1 - marginal. Throws PreconditionError on a missing or mismatched picker.
TIRSTable set_to_bag(const std::vector<std::pair<Fact, Rational>>& set_pdb,
                     const std::map<Rational, MultiplicityDistribution>& picker);

/// Facts R(1)..R(n) with R(i) ~ explicit(0:1/2, x_i:1/2) and Q = EXISTS x . R(x),
/// so that Pr(#Q = B) * 2^n counts the subsets of x summing to B.
std::pair<TIRSTable, UCQ> subsetsum_table(const std::vector<Count>& x, Count target);

}  // namespace bagpdb
