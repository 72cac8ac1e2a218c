#include <doctest.h>

#include <random>

#include "bagpdb/moments.hpp"
#include "bagpdb/table_io.hpp"
#include "testkit.hpp"

using namespace bagpdb;
using testkit::Q;

namespace {

const char* kExample22 = "R(a) @ explicit(2:1/2, 3:1/2)\nS(a) @ explicit(1:1/3, 2:1/3, 3:1/3)\n";

CQ cq(const std::string& s) { return parse_query(s).disjuncts.at(0); }

}  // namespace

TEST_CASE("expectation examples") {
  const auto t = parse_table("R(a) @ explicit(0:1/2, 2:1/2)\nS(a,b) @ explicit(1:1)\n");
  const UCQ q = parse_query("EXISTS x y . R(x) & S(x,y)");
  CHECK(expectation(t, q) == 1);
  CHECK(expectation(t, q) == testkit::brute_raw_moment(testkit::brute_distribution(t, q), 1));
  CHECK(expectation(TIRSTable{}, parse_query("EXISTS x . R(x)")) == 0);
  CHECK(expectation(parse_table("R(a) @ bernoulli(2/5)"), parse_query("EXISTS x . R(x) & R(x)")) == Q(2, 5));
}

TEST_CASE("product expectation") {
  const auto t = parse_table("R(a) @ explicit(0:1/2, 2:1/2)\nS(a,b) @ explicit(1:1/2, 3:1/2)\n");
  const CQ q = cq("EXISTS x y . R(x) & S(x,y)");
  CHECK(product_expectation(t, {q}) == expectation(t, q));
  const auto r = parse_table("R(a) @ explicit(0:1/2, 2:1/2)");
  const CQ rx = cq("EXISTS x . R(x)");
  CHECK(product_expectation(r, {rx, rx}) == 2);
  CHECK(product_expectation(r, {rx, rx}) == testkit::brute_raw_moment(testkit::brute_distribution(r, rx), 2));
  const auto two = parse_table("R(a) @ explicit(1:1/2, 2:1/2)\nT(a) @ binomial(2, 1/3)\n");
  const CQ tx = cq("EXISTS x . T(x)");
  Rational joint(0);
  const UCQ both = parse_query("EXISTS x y . R(x) & T(y)");
  CHECK(product_expectation(two, {rx, tx}) == expectation(two, rx) * expectation(two, tx));
  CHECK(product_expectation(two, {rx, tx}) == testkit::brute_raw_moment(testkit::brute_distribution(two, both), 1));
}

TEST_CASE("variance examples") {
  CHECK(variance(parse_table("R(a) @ explicit(3:1)\nR(b) @ explicit(1:1)"), parse_query("EXISTS x . R(x)")) == 0);
  const auto t = parse_table(kExample22);
  const UCQ q = parse_query("R(\"a\") & S(\"a\")");
  // Count distribution {2:1/6, 3:1/6, 4:1/6, 6:1/3, 9:1/6}: E = 5, E(X^2) = 91/3.
  CHECK(variance(t, q) == Q(16, 3));
  CHECK(variance(t, q) == testkit::brute_variance(testkit::brute_distribution(t, q)));
  CHECK(variance(parse_table("R(a) @ bernoulli(1/2)"), parse_query("EXISTS x . R(x)")) == Q(1, 4));
}

TEST_CASE("raw and central moments") {
  const auto t = parse_table("R(a) @ explicit(0:1/3, 1:1/3, 3:1/3)\nR(b) @ binomial(2, 1/2)\n");
  const UCQ q = parse_query("EXISTS x . R(x)");
  const auto d = testkit::brute_distribution(t, q);
  CHECK(raw_moment_of_query(t, q, 0) == 1);
  CHECK(raw_moment_of_query(t, q, 1) == expectation(t, q));
  CHECK(raw_moment_of_query(t, q, 3) == testkit::brute_raw_moment(d, 3));
  CHECK(central_moment_of_query(t, q, 0) == 1);
  CHECK(central_moment_of_query(t, q, 1) == 0);
  CHECK(central_moment_of_query(t, q, 2) == variance(t, q));
}

TEST_CASE("chebyshev bounds") {
  const auto det = parse_table("R(a) @ explicit(2:1)\nR(b) @ explicit(1:1)");
  const UCQ rx = parse_query("EXISTS x . R(x)");
  auto b = chebyshev_bound(det, rx, 3);
  CHECK((b.lo == 1 && b.hi == 1));
  b = chebyshev_bound(det, rx, 2);
  CHECK((b.lo == 0 && b.hi == 0));
  const auto t = parse_table(kExample22);
  const UCQ q = parse_query("R(\"a\") & S(\"a\")");
  b = chebyshev_bound(t, q, 3);
  CHECK(b.lo <= Q(1, 3));
  CHECK(Q(1, 3) <= b.hi);
  CHECK(b.hi < 1);
}

TEST_CASE("moment identities on random tables") {
  std::mt19937_64 rng(12);
  const testkit::Schema schema{{{"R", 1}, {"S", 2}}, {"a", "b"}};
  const UCQ q1 = parse_query("EXISTS x y . R(x) & S(x,y)");
  const UCQ q2 = parse_query("EXISTS x . R(x) & R(x)");
  const UCQ both = parse_query("EXISTS x y . R(x) & S(x,y) | EXISTS x . R(x) & R(x)");
  for (int i = 0; i < 100; ++i) {
    const auto t = testkit::random_table(rng, schema, 4);
    CHECK(expectation(t, both) == expectation(t, q1) + expectation(t, q2));
    CHECK(central_moment_of_query(t, both, 2) == variance(t, both));
    CHECK(central_moment_of_query(t, both, 1) == 0);
    const auto d = testkit::brute_distribution(t, both);
    CHECK(central_moment_of_query(t, both, 3) ==
          [&] {
            const Rational e = testkit::brute_raw_moment(d, 1);
            Rational s(0);
            for (const auto& [v, p] : d) s += pow(Rational(static_cast<long>(v)) - e, 3) * p;
            return s;
          }());
    for (Count k = 0; k <= 8; ++k) {
      const auto b = chebyshev_bound(t, both, k);
      const Rational truth = testkit::brute_at_most(d, k);
      CHECK(b.lo <= truth);
      CHECK(truth <= b.hi);
    }
  }
}

TEST_CASE("doubling the first moment doubles the expectation") {
  const UCQ q = parse_query("R(\"a\")");
  const auto base = parse_table("R(a) @ explicit(0:1/2, 1:1/4, 3:1/4)");
  const auto doubled = parse_table("R(a) @ explicit(0:1/2, 2:1/4, 6:1/4)");
  CHECK(expectation(doubled, q) == 2 * expectation(base, q));
}

TEST_CASE("geometric facts have exact moments") {
  const auto t = parse_table("R(a) @ geometric(1/2)\nR(b) @ bernoulli(1/2)\n");
  const UCQ q = parse_query("EXISTS x . R(x)");
  CHECK(expectation(t, q) == Q(3, 2));
  // Var = (1-p)/p^2 + 1/4
  CHECK(variance(t, q) == Q(2) + Q(1, 4));
}
