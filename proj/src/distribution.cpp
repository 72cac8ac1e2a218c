#include "bagpdb/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "bagpdb/errors.hpp"

namespace bagpdb {

namespace {

void require_probability(const Rational& p, const char* family) {
  if (sgn(p) < 0 || p > 1) {
    throw ValidationError(std::string(family) + " parameter " + to_string(p) + " outside [0,1]");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// Factorial moment E[(X)_j] for the closed-form families.
Rational factorial_moment(const MultiplicityDistribution::Variant& v, unsigned j) {
  return std::visit(
      Overloaded{
          [&](const ExplicitDist& d) -> Rational {
            Rational s(0);
            for (const auto& [k, p] : d.pmf) s += Rational(falling_factorial(k, j)) * p;
            return s;
          },
          [&](const BernoulliDist& d) -> Rational {
            if (j == 0) return Rational(1);
            return j == 1 ? d.p : Rational(0);
          },
          [&](const BinomialDist& d) -> Rational {
            return Rational(falling_factorial(d.n, j)) * pow(d.p, j);
          },
          [&](const GeometricDist& d) -> Rational {
            return Rational(factorial(j)) * pow((1 - d.p) / d.p, j);
          },
      },
      v);
}

}  // namespace

MultiplicityDistribution MultiplicityDistribution::explicit_pmf(std::map<Count, Rational> pmf) {
  Rational total(0);
  for (auto it = pmf.begin(); it != pmf.end();) {
    it->second.canonicalize();
    require_probability(it->second, "explicit");
    total += it->second;
    if (sgn(it->second) == 0) {
      it = pmf.erase(it);
    } else {
      ++it;
    }
  }
  if (total != 1) {
    throw ValidationError("explicit distribution sums to " + to_string(total) + ", not 1");
  }
  return MultiplicityDistribution(ExplicitDist{std::move(pmf)});
}

MultiplicityDistribution MultiplicityDistribution::bernoulli(Rational p) {
  p.canonicalize();
  require_probability(p, "bernoulli");
  return MultiplicityDistribution(BernoulliDist{std::move(p)});
}

MultiplicityDistribution MultiplicityDistribution::binomial(Count n, Rational p) {
  p.canonicalize();
  require_probability(p, "binomial");
  return MultiplicityDistribution(BinomialDist{n, std::move(p)});
}

MultiplicityDistribution MultiplicityDistribution::geometric(Rational p) {
  p.canonicalize();
  if (sgn(p) <= 0 || p > 1) {
    throw ValidationError("geometric parameter " + to_string(p) + " outside (0,1]");
  }
  return MultiplicityDistribution(GeometricDist{std::move(p)});
}

MultiplicityDistribution MultiplicityDistribution::point(Count value) {
  return explicit_pmf({{value, Rational(1)}});
}

Rational MultiplicityDistribution::pmf(Count k) const {
  return std::visit(
      Overloaded{
          [&](const ExplicitDist& d) -> Rational {
            auto it = d.pmf.find(k);
            return it == d.pmf.end() ? Rational(0) : it->second;
          },
          [&](const BernoulliDist& d) -> Rational {
            if (k == 0) return Rational(1 - d.p);
            return k == 1 ? d.p : Rational(0);
          },
          [&](const BinomialDist& d) -> Rational {
            if (k > d.n) return Rational(0);
            return Rational(bagpdb::binomial(d.n, k)) * pow(d.p, k) * pow(1 - d.p, d.n - k);
          },
          [&](const GeometricDist& d) -> Rational { return Rational(d.p * pow(1 - d.p, k)); },
      },
      v_);
}

Rational MultiplicityDistribution::raw_moment(unsigned order) const {
  if (order == 0) return Rational(1);
  if (const auto* e = std::get_if<ExplicitDist>(&v_)) {
    Rational s(0);
    for (const auto& [k, p] : e->pmf) s += pow(Rational(Integer(static_cast<unsigned long>(k))), order) * p;
    return s;
  }
  // E(X^l) = sum_j S(l, j) E[(X)_j]
  Rational s(0);
  for (unsigned j = 1; j <= order; ++j) s += Rational(stirling2(order, j)) * factorial_moment(v_, j);
  return s;
}

std::optional<Count> MultiplicityDistribution::support_bound() const {
  return std::visit(
      Overloaded{
          [](const ExplicitDist& d) -> std::optional<Count> {
            return d.pmf.empty() ? 0 : d.pmf.rbegin()->first;
          },
          [](const BernoulliDist& d) -> std::optional<Count> { return sgn(d.p) == 0 ? 0 : 1; },
          [](const BinomialDist& d) -> std::optional<Count> { return sgn(d.p) == 0 ? 0 : d.n; },
          [](const GeometricDist& d) -> std::optional<Count> {
            if (d.p == 1) return 0;
            return std::nullopt;
          },
      },
      v_);
}

std::string to_string(const MultiplicityDistribution& d) {
  return std::visit(
      Overloaded{
          [](const ExplicitDist& e) {
            std::string s = "explicit(";
            bool first = true;
            for (const auto& [k, p] : e.pmf) {
              if (!first) s += ", ";
              first = false;
              s += std::to_string(k) + ":" + to_string(p);
            }
            return s + ")";
          },
          [](const BernoulliDist& b) { return "bernoulli(" + to_string(b.p) + ")"; },
          [](const BinomialDist& b) {
            return "binomial(" + std::to_string(b.n) + ", " + to_string(b.p) + ")";
          },
          [](const GeometricDist& g) { return "geometric(" + to_string(g.p) + ")"; },
      },
      d.variant());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

Count parse_count(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError("expected a natural number, got '" + std::string(s) + "'", 0);
  }
  if (s.size() > 18) throw ParseError("natural number too large: '" + std::string(s) + "'", 0);
  return std::stoull(std::string(s));
}

}  // namespace

MultiplicityDistribution parse_distribution(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ParseError("malformed distribution '" + std::string(text) + "'", 0);
  }
  std::string family(trim(text.substr(0, open)));
  std::transform(family.begin(), family.end(), family.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto body = trim(text.substr(open + 1, text.size() - open - 2));
  const auto args = split(body, ',');
  auto arity = [&](std::size_t n) {
    if (args.size() != n || (n > 0 && args[0].empty())) {
      throw ParseError(family + " expects " + std::to_string(n) + " argument(s)", 0);
    }
  };
  if (family == "bernoulli") {
    arity(1);
    return MultiplicityDistribution::bernoulli(parse_rational(args[0]));
  }
  if (family == "binomial") {
    arity(2);
    return MultiplicityDistribution::binomial(parse_count(args[0]), parse_rational(args[1]));
  }
  if (family == "geometric") {
    arity(1);
    return MultiplicityDistribution::geometric(parse_rational(args[0]));
  }
  if (family == "explicit") {
    std::map<Count, Rational> pmf;
    for (auto entry : args) {
      const auto colon = entry.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError("explicit entry '" + std::string(entry) + "' is not value:probability", 0);
      }
      const Count k = parse_count(trim(entry.substr(0, colon)));
      if (pmf.contains(k)) throw ValidationError("explicit distribution repeats value " + std::to_string(k));
      pmf.emplace(k, parse_rational(trim(entry.substr(colon + 1))));
    }
    return MultiplicityDistribution::explicit_pmf(std::move(pmf));
  }
  if (family == "poisson") {
    throw ValidationError("poisson multiplicities have irrational point probabilities and are not supported");
  }
  throw ParseError("unknown distribution family '" + family + "'", 0);
}

}  // namespace bagpdb
