#pragma once

#include <vector>

#include "bagpdb/query.hpp"
#include "bagpdb/rational.hpp"
#include "bagpdb/table.hpp"

namespace bagpdb {

/// Pr(#_T Q = j) for j = 0..k, for a hierarchical self-join-free CQ.
/// Throws PreconditionError otherwise.
std::vector<Rational> point_distribution(const TIRSTable& table, const CQ& q, Count k);

/// Pr(#_T Q = k) for a hierarchical self-join-free CQ.
Rational pqe_point_hierarchical(const TIRSTable& table, const CQ& q, Count k);

/// Pr(#_T Q <= k) for a hierarchical self-join-free CQ.
Rational pqe_hierarchical(const TIRSTable& table, const CQ& q, Count k);

/// True when every distribution of the table has zero probability 0 or 1.
bool is_degenerate(const TIRSTable& table);

/// Pr(#_T Q <= k) for any UCQ on a degenerate table; PreconditionError
/// when the table is not degenerate.
Rational pqe_degenerate(const TIRSTable& table, const UCQ& q, Count k);

enum class Mode { AtMost, Exactly, AtLeast };

Mode parse_mode(std::string_view text);
std::string to_string(Mode mode);

/// Picks the degenerate algorithm, then the hierarchical one, then (only with
/// `fallback`) exhaustive case splitting; otherwise throws IntractableError
/// naming the structural check that failed.
Rational pqe(const TIRSTable& table, const UCQ& q, Count k, Mode mode, bool fallback = false);

}  // namespace bagpdb
