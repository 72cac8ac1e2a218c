#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bagpdb/rational.hpp"

namespace bagpdb {

using Count = std::uint64_t;

/// Finitely supported pmf given point by point.
struct ExplicitDist {
  std::map<Count, Rational> pmf;
  bool operator==(const ExplicitDist&) const = default;
};

struct BernoulliDist {
  Rational p;
  bool operator==(const BernoulliDist&) const = default;
};

struct BinomialDist {
  Count n = 0;
  Rational p;
  bool operator==(const BinomialDist&) const = default;
};

/// Pr(X = k) = p (1 - p)^k for k >= 0.
struct GeometricDist {
  Rational p;
  bool operator==(const GeometricDist&) const = default;
};

/// A parameterized multiplicity distribution over the naturals. Instances are
/// validated on construction and immutable afterwards.
class MultiplicityDistribution {
 public:
  using Variant = std::variant<ExplicitDist, BernoulliDist, BinomialDist, GeometricDist>;

  /// Zero-probability entries are dropped; probabilities must be in [0,1]
  /// and sum to exactly 1.
  static MultiplicityDistribution explicit_pmf(std::map<Count, Rational> pmf);
  static MultiplicityDistribution bernoulli(Rational p);
  static MultiplicityDistribution binomial(Count n, Rational p);
  static MultiplicityDistribution geometric(Rational p);
  /// Explicit{value: 1}.
  static MultiplicityDistribution point(Count value);

  const Variant& variant() const noexcept { return v_; }

  /// P(X = k).
  Rational pmf(Count k) const;
  Rational zero_prob() const { return pmf(0); }
  /// E(X^order), exact.
  Rational raw_moment(unsigned order) const;
  /// Smallest B with P(X > B) = 0, or nullopt for infinite support.
  std::optional<Count> support_bound() const;

  bool operator==(const MultiplicityDistribution&) const = default;

 private:
  explicit MultiplicityDistribution(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Table-file descriptor, e.g. `binomial(10, 1/3)` or `explicit(0:1/4, 5:3/4)`.
std::string to_string(const MultiplicityDistribution& d);

/// Parses a descriptor produced by to_string (case-insensitive family name).
/// Throws ParseError / ValidationError.
MultiplicityDistribution parse_distribution(std::string_view text);

}  // namespace bagpdb
