#pragma once

#include <compare>
#include <string>
#include <vector>

namespace bagpdb {

/// A ground atom R(c1, ..., cn). Ordering is canonical: relation name first,
/// then arguments lexicographically.
struct Fact {
  std::string relation;
  std::vector<std::string> args;

  auto operator<=>(const Fact&) const = default;
  bool operator==(const Fact&) const = default;
};

/// `R(a,b)`; constants are printed bare.
std::string to_string(const Fact& fact);

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept;
};

}  // namespace bagpdb
