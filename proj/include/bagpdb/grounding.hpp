#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bagpdb/analysis.hpp"
#include "bagpdb/table.hpp"

namespace bagpdb {

using Binding = std::unordered_map<std::string, std::string>;

/// Calls `fn` once for every valuation of the bound variables of `q` under
/// which every atom grounds to a fact of `index`. Valuations that touch a
/// missing fact contribute nothing under bag semantics and are skipped, so
/// summing over the visited valuations equals summing over all of
/// (active domain ∪ query constants)^m.
void for_each_match(const CQ& q, const FactIndex& index, const std::function<void(const Binding&)>& fn);

/// Grounding profiles of every matching valuation, in visit order.
std::vector<GroundingProfile> matching_groundings(const CQ& q, const TIRSTable& table);

/// #_D(Q) under bag semantics. Throws ArithmeticError on 64-bit overflow.
Count eval_instance(const BagInstance& instance, const UCQ& q);

}  // namespace bagpdb
