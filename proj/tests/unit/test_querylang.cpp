#include <doctest.h>

#include <random>

#include "bagpdb/analysis.hpp"
#include "bagpdb/errors.hpp"
#include "bagpdb/query.hpp"

using namespace bagpdb;

namespace {

const char* kMixedQuery = "EXISTS x y z . R(\"a\") & S(z,\"a\") & U(x) & V(x,y) & W(y)";

CQ cq(const std::string& s) { return parse_query(s).disjuncts.at(0); }

}  // namespace

TEST_CASE("parse the two-component example query") {
  const UCQ q = parse_query(kMixedQuery);
  REQUIRE(q.disjuncts.size() == 1);
  CHECK(q.disjuncts[0].atoms.size() == 5);
  CHECK(q.disjuncts[0].bound_vars == std::vector<std::string>{"x", "y", "z"});
  const auto a = analyze(q.disjuncts[0]);
  REQUIRE(a.constant_atoms.size() == 1);
  CHECK(to_string(a.constant_atoms[0]) == "R(\"a\")");
}

TEST_CASE("quantifier-free and union syntax") {
  const UCQ ground = parse_query("R(\"a\")");
  REQUIRE(ground.disjuncts.size() == 1);
  CHECK(ground.disjuncts[0].bound_vars.empty());
  CHECK(ground.disjuncts[0].atoms[0].is_ground());
  CHECK(parse_query("EXISTS x . R(x) | EXISTS y . S(y)").disjuncts.size() == 2);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_query("EXISTS x . R(x");
    FAIL("accepted unterminated atom");
  } catch (const ParseError& e) {
    CHECK(e.position() == 14);
  }
  CHECK_THROWS_AS(parse_query(""), ParseError);
  CHECK_THROWS_AS(parse_query("EXISTS x . R(x) &"), ParseError);
  CHECK_THROWS_AS(parse_query("R(\"a)"), ParseError);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse_query("R(x)"), ValidationError);                       // free variable
  CHECK_THROWS_AS(parse_query("EXISTS x y . R(x)"), ValidationError);          // unused variable
  CHECK_THROWS_AS(parse_query("EXISTS x x . R(x)"), ValidationError);          // duplicate quantifier
  CHECK_THROWS_AS(parse_query("EXISTS x . R(x) & R(x,x)"), ValidationError);   // arity clash
  CHECK_THROWS_AS(parse_query("EXISTS x . R(x) | R(\"a\",\"b\")"), ValidationError);
}

TEST_CASE("hierarchy and self-joins") {
  const auto rst = analyze(cq("EXISTS x y . R(x) & S(x,y) & T(y)"));
  CHECK_FALSE(rst.hierarchical);
  CHECK(rst.self_join_free);
  const auto rr = analyze(cq("EXISTS x . R(x) & R(x)"));
  CHECK(rr.self_join_width == 2);
  CHECK_FALSE(rr.self_join_free);
  const auto h = analyze(cq("EXISTS x y . R(x) & S(x,y)"));
  CHECK(h.hierarchical);
  CHECK(h.sg.at("x") == std::set<std::string>{"R", "S"});
  CHECK(h.sg.at("y") == std::set<std::string>{"S"});
}

TEST_CASE("components of the two-component example") {
  const auto a = analyze(cq(kMixedQuery));
  REQUIRE(a.components.size() == 2);
  CHECK(to_string(a.components[0].as_query()) == "EXISTS z . S(z,\"a\")");
  CHECK(to_string(a.components[1].as_query()) == "EXISTS x y . U(x) & V(x,y) & W(y)");
  CHECK_FALSE(a.hierarchical);
}

TEST_CASE("maximal variable") {
  const auto a = analyze(cq(kMixedQuery));
  CHECK(maximal_variable(a.components[0]) == "z");
  CHECK_THROWS_AS(maximal_variable(a.components[1]), PreconditionError);
  CHECK(maximal_variable(analyze(cq("EXISTS x y . R(x) & S(x,y)")).components[0]) == "x");
  // Ties go to the lexicographically smallest variable.
  CHECK(maximal_variable(analyze(cq("EXISTS y x . S(y,x)")).components[0]) == "x");
}

TEST_CASE("substitute builds grounding profiles") {
  const auto rr = substitute(cq("EXISTS x . R(x) & R(x)"), {{"x", "a"}});
  CHECK(rr == GroundingProfile{{Fact{"R", {"a"}}, 2}});
  const auto full = substitute(cq(kMixedQuery), {{"x", "a"}, {"y", "b"}, {"z", "a"}});
  const GroundingProfile expected = {{Fact{"R", {"a"}}, 1}, {Fact{"S", {"a", "a"}}, 1}, {Fact{"U", {"a"}}, 1},
                                     {Fact{"V", {"a", "b"}}, 1}, {Fact{"W", {"b"}}, 1}};
  CHECK(full == expected);
  CHECK(substitute(cq("EXISTS x y . S(x,y)"), {{"x", "a"}, {"y", "a"}}) ==
        GroundingProfile{{Fact{"S", {"a", "a"}}, 1}});
  CHECK_THROWS_AS(substitute(cq("EXISTS x y . S(x,y)"), {{"x", "a"}}), PreconditionError);
}

TEST_CASE("partition covers every atom exactly once") {
  for (const char* s : {kMixedQuery, "EXISTS x y . R(x) & S(x,y) & T(y)", "R(\"a\") & S(\"b\")",
                        "EXISTS x y u v . R(x) & S(x,y) & T(u) & U(u,v) & V(\"c\")"}) {
    const CQ q = cq(s);
    const auto a = analyze(q);
    std::multiset<Atom> seen(a.constant_atoms.begin(), a.constant_atoms.end());
    for (const auto& c : a.components) seen.insert(c.atoms.begin(), c.atoms.end());
    CHECK(seen == std::multiset<Atom>(q.atoms.begin(), q.atoms.end()));
    for (const auto& atom : a.constant_atoms) CHECK(atom.is_ground());
  }
}

TEST_CASE("every component of a hierarchical self-join-free query has a maximal variable") {
  for (const char* s : {"EXISTS x y . R(x) & S(x,y)", "EXISTS x y z . R(x) & S(x,y) & T(x,y,z) & U(\"a\")",
                        "EXISTS x y . R(x) & T(y)"}) {
    const auto a = analyze(cq(s));
    REQUIRE(a.hierarchical);
    for (const auto& c : a.components) {
      const std::string x = maximal_variable(c);
      for (const auto& atom : c.atoms) {
        bool found = false;
        for (const auto& t : atom.args) found = found || (t.is_variable() && t.name == x);
        CHECK(found);
      }
    }
  }
}

TEST_CASE("random queries round-trip through the printer") {
  std::mt19937_64 rng(42);
  const std::vector<std::string> rels = {"R", "S", "T"};
  const std::vector<std::size_t> arity = {1, 2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    UCQ q;
    const int disjuncts = 1 + static_cast<int>(rng() % 3);
    for (int d = 0; d < disjuncts; ++d) {
      CQ c;
      const int atoms = 1 + static_cast<int>(rng() % 4);
      std::set<std::string> used;
      for (int i = 0; i < atoms; ++i) {
        const std::size_t r = rng() % rels.size();
        Atom a{rels[r], {}};
        for (std::size_t p = 0; p < arity[r]; ++p) {
          if (rng() % 3 == 0) {
            a.args.push_back(Term::constant(std::string(1, static_cast<char>('a' + rng() % 3))));
          } else {
            std::string v(1, static_cast<char>('u' + rng() % 4));
            used.insert(v);
            a.args.push_back(Term::variable(v));
          }
        }
        c.atoms.push_back(a);
      }
      c.bound_vars.assign(used.begin(), used.end());
      q.disjuncts.push_back(c);
    }
    const std::string text = to_string(q);
    CHECK(parse_query(text) == q);
    CHECK(analyze(q.disjuncts[0]).components.size() == analyze(parse_query(text).disjuncts[0]).components.size());
  }
}

TEST_CASE("reserved and quoted names") {
  CHECK_THROWS(parse_query("EXISTS EXISTS . R(EXISTS)"));
  const UCQ q = parse_query("EXISTS x . R(x, \"1\")");
  CHECK(q.disjuncts[0].atoms[0].args[1] == Term::constant("1"));
  CHECK(query_constants(q) == std::vector<std::string>{"1"});
}
