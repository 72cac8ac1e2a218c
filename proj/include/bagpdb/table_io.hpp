#pragma once

#include <string>
#include <string_view>

#include "bagpdb/table.hpp"

namespace bagpdb {

/// Parses a table document. One fact per line:
///
///   R(1,1) @ bernoulli(1/2)
///   R(2,2) @ explicit(0:1/4, 1:1/4, 5:1/2)
///   S("x y") @ geometric(1/3)    # comment
///
/// Constants are bare ([A-Za-z0-9_]+) or double-quoted. Errors carry the
/// 1-based line number (ParseError::position).
TIRSTable parse_table(std::string_view text);

/// Reads and parses a table file; a missing file is a ParseError at line 0.
TIRSTable load_table(const std::string& path);

/// Canonical document: one line per fact in canonical order.
std::string format_table(const TIRSTable& table);

void save_table(const TIRSTable& table, const std::string& path);

}  // namespace bagpdb
