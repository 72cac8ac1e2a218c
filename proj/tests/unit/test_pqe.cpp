#include <doctest.h>

#include <random>

#include "bagpdb/errors.hpp"
#include "bagpdb/grounding.hpp"
#include "bagpdb/oracle.hpp"
#include "bagpdb/pqe.hpp"
#include "bagpdb/table_io.hpp"
#include "testkit.hpp"

using namespace bagpdb;
using testkit::Q;

namespace {

const char* kExample22 = "R(a) @ explicit(2:1/2, 3:1/2)\nS(a) @ explicit(1:1/3, 2:1/3, 3:1/3)\n";

CQ cq(const std::string& s) { return parse_query(s).disjuncts.at(0); }

}  // namespace

TEST_CASE("point probabilities for hierarchical queries") {
  const auto t = parse_table(kExample22);
  CHECK(pqe_point_hierarchical(t, cq("R(\"a\") & S(\"a\")"), 6) == Q(1, 3));
  CHECK(pqe_point_hierarchical(TIRSTable{}, cq("EXISTS x . R(x)"), 0) == 1);
  const auto two = parse_table("R(a) @ explicit(0:1/2, 2:1/2)\nR(b) @ explicit(0:1/3, 1:2/3)\n");
  CHECK(pqe_point_hierarchical(two, cq("EXISTS x . R(x)"), 1) == Q(1, 3));
  CHECK(pqe_point_hierarchical(two, cq("EXISTS x . R(x)"), 1) ==
        testkit::brute_exactly(testkit::brute_distribution(two, cq("EXISTS x . R(x)")), 1));
}

TEST_CASE("threshold probabilities for hierarchical queries") {
  const auto t = parse_table(kExample22);
  CHECK(pqe_hierarchical(t, cq("R(\"a\") & S(\"a\")"), 3) == Q(1, 3));
  CHECK(pqe_hierarchical(t, cq("R(\"a\") & S(\"a\")"), 9) == 1);
  const auto s = parse_table("S(b,a) @ explicit(0:1/2, 1:1/2)\nS(c,a) @ explicit(0:1/2, 1:1/2)\n");
  CHECK(pqe_hierarchical(s, cq("EXISTS z . S(z,\"a\")"), 0) == Q(1, 4));
}

TEST_CASE("structural preconditions") {
  const auto t = parse_table(kExample22);
  CHECK_THROWS_AS(pqe_hierarchical(t, cq("EXISTS x y . R(x) & S(x) & T(x,y) & U(y) & V(y,x) & W(y)"), 1),
                  PreconditionError);
  CHECK_THROWS_AS(pqe_hierarchical(t, cq("EXISTS x . R(x) & R(x)"), 1), PreconditionError);
  const auto nd = parse_table("R(a) @ bernoulli(1/2)\nU(a,b) @ bernoulli(1/2)\nT(b) @ bernoulli(1/2)\n");
  try {
    pqe(nd, parse_query("EXISTS x y . R(x) & U(x,y) & T(y)"), 1, Mode::AtMost);
    FAIL("non-hierarchical query accepted");
  } catch (const IntractableError& e) {
    CHECK(std::string(e.what()).find("hierarchical") != std::string::npos);
  }
  CHECK_THROWS_AS(pqe(nd, parse_query("EXISTS x . R(x) & R(x)"), 1, Mode::AtMost), IntractableError);
  CHECK_THROWS_AS(pqe(nd, parse_query("EXISTS x . R(x) | EXISTS x y . U(x,y)"), 1, Mode::AtMost), IntractableError);
  CHECK(pqe(t, parse_query("EXISTS x y . R(x) & U(x,y) & T(y)"), 1, Mode::AtMost) == 1);
}

TEST_CASE("modes") {
  const auto t = parse_table(kExample22);
  const UCQ q = parse_query("R(\"a\") & S(\"a\")");
  CHECK(pqe(t, q, 0, Mode::AtLeast) == 1);
  CHECK(pqe(t, q, 6, Mode::Exactly) == Q(1, 3));
  CHECK(pqe(t, q, 6, Mode::AtLeast) == Q(1, 2));
  CHECK(parse_mode("exactly") == Mode::Exactly);
  CHECK_THROWS_AS(parse_mode("most"), ValidationError);
}

TEST_CASE("fallback covers intractable queries") {
  const auto t = parse_table("R(a) @ bernoulli(1/2)\nS(a,b) @ explicit(0:1/2, 2:1/2)\nT(b) @ binomial(2, 1/2)\n");
  const UCQ q = parse_query("EXISTS x y . R(x) & S(x,y) & T(y)");
  const auto d = testkit::brute_distribution(t, q);
  for (Count k = 0; k <= 5; ++k) CHECK(pqe(t, q, k, Mode::AtMost, true) == testkit::brute_at_most(d, k));
}

TEST_CASE("degenerate tables") {
  const auto one = parse_table("R(a) @ explicit(1:1/2, 2:1/2)");
  CHECK(pqe_degenerate(one, parse_query("EXISTS x . R(x)"), 1) == Q(1, 2));
  const auto absent = parse_table("R(a) @ explicit(0:1)\nR(b) @ geometric(1)\n");
  for (Count k = 0; k <= 3; ++k) CHECK(pqe_degenerate(absent, parse_query("EXISTS x . R(x)"), k) == 1);
  const auto many = parse_table("R(a) @ explicit(1:1/2, 2:1/2)\nR(b) @ explicit(1:1)\nR(c) @ binomial(3, 1)\n");
  CHECK(pqe_degenerate(many, parse_query("EXISTS x . R(x)"), 2) == 0);
  CHECK_THROWS_AS(pqe_degenerate(parse_table("R(a) @ bernoulli(1/2)"), parse_query("EXISTS x . R(x)"), 1),
                  PreconditionError);
}

TEST_CASE("degenerate algorithm matches the reference on random degenerate tables") {
  std::mt19937_64 rng(13);
  const std::vector<UCQ> queries = {parse_query("EXISTS x y . R(x) & S(x,y) & R(y)"),
                                    parse_query("EXISTS x y . R(x) & S(x,y) & T(y)"),
                                    parse_query("EXISTS x . R(x) & R(x) | EXISTS x y . S(x,y)")};
  const std::vector<std::string> dists = {"explicit(0:1)", "explicit(1:1/2, 2:1/2)", "explicit(1:1/3, 3:2/3)",
                                          "binomial(2, 1)", "explicit(2:1)"};
  const std::vector<std::string> facts = {"R(a)", "R(b)", "S(a,b)", "S(b,a)", "S(a,a)", "T(b)"};
  for (int i = 0; i < 150; ++i) {
    std::string doc;
    for (const auto& f : facts)
      if (rng() % 3 != 0) doc += f + " @ " + dists[rng() % dists.size()] + "\n";
    const auto t = parse_table(doc);
    REQUIRE(is_degenerate(t));
    for (const auto& q : queries) {
      const auto d = testkit::brute_distribution(t, q);
      for (Count k = 0; k <= 5; ++k) CHECK(pqe(t, q, k, Mode::AtMost) == testkit::brute_at_most(d, k));
    }
  }
}

TEST_CASE("monotonicity and consistency of the modes") {
  std::mt19937_64 rng(14);
  const testkit::Schema schema{{{"R", 1}, {"S", 2}, {"T", 1}}, {"a", "b"}};
  const UCQ q = parse_query("EXISTS x y . R(x) & S(x,y) & T(x)");
  for (int i = 0; i < 100; ++i) {
    const auto t = testkit::random_table(rng, schema, 5);
    Rational prev(0);
    Rational sum(0);
    for (Count k = 0; k <= 8; ++k) {
      const Rational at_most = pqe(t, q, k, Mode::AtMost);
      CHECK(at_most >= prev);
      CHECK(at_most <= 1);
      prev = at_most;
      sum += pqe(t, q, k, Mode::Exactly);
      CHECK(sum == at_most);
      CHECK(pqe(t, q, k + 1, Mode::AtLeast) == 1 - at_most);
    }
  }
}

TEST_CASE("components are independent") {
  std::mt19937_64 rng(15);
  const testkit::Schema schema{{{"R", 1}, {"S", 2}}, {"a", "b"}};
  const UCQ q1 = parse_query("EXISTS x . R(x)");
  const UCQ q2 = parse_query("EXISTS x y . S(x,y)");
  for (int i = 0; i < 50; ++i) {
    const auto t = testkit::random_table(rng, schema, 4);
    std::map<std::pair<Count, Count>, Rational> joint;
    std::map<Count, Rational> m1, m2;
    for_each_world(t, [&](const BagInstance& w, const Rational& p) {
      const Count a = eval_instance(w, q1);
      const Count b = eval_instance(w, q2);
      joint[{a, b}] += p;
      m1[a] += p;
      m2[b] += p;
    });
    for (const auto& [a, pa] : m1)
      for (const auto& [b, pb] : m2) CHECK(joint[{a, b}] == pa * pb);
  }
}

TEST_CASE("hierarchical engine on infinite supports") {
  const auto t = parse_table("R(a) @ geometric(1/2)\nR(b) @ geometric(1/3)\nS(a,c) @ bernoulli(1/2)\n");
  const CQ q = cq("EXISTS x . R(x)");
  // Pr(sum = 0) and Pr(sum = 1) by hand.
  CHECK(pqe_point_hierarchical(t, q, 0) == Q(1, 2) * Q(1, 3));
  CHECK(pqe_point_hierarchical(t, q, 1) == Q(1, 4) * Q(1, 3) + Q(1, 2) * Q(2, 9));
  CHECK(pqe_hierarchical(t, cq("EXISTS x y . R(x) & S(x,y)"), 1) ==
        oracle_at_most(t, parse_query("EXISTS x y . R(x) & S(x,y)"), 1));
}
