#include <doctest.h>

#include <string>
#include <vector>

#include "bagpdb/cli.hpp"

using bagpdb::run_cli;

namespace {

std::string data(const std::string& name) { return std::string(BAGPDB_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("documented invocations") {
  auto r = run_cli({"pqe", "--table", data("ex22.tbl"), "--query", "R(\"a\") & S(\"a\")", "--k", "6", "--mode", "exactly"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1/3\n");
  r = run_cli({"classify", "--query", "EXISTS x y . R(x) & S(x,y) & T(y)"});
  CHECK(r.out == "self_join_free=true hierarchical=false\n");
  r = run_cli({"expectation", "--table", data("empty.tbl"), "--query", "EXISTS x . R(x)"});
  CHECK(r.out == "0/1\n");
}

TEST_CASE("moment commands") {
  const std::string t = data("ex22.tbl");
  const std::string q = "R(\"a\") & S(\"a\")";
  CHECK(run_cli({"expectation", "--table", t, "--query", q}).out == "5/1\n");
  CHECK(run_cli({"variance", "--table", t, "--query", q}).out == "16/3\n");
  CHECK(run_cli({"moment", "--table", t, "--query", q, "--order", "2"}).out == "91/3\n");
  CHECK(run_cli({"moment", "--table", t, "--query", q, "--order", "2", "--central"}).out == "16/3\n");
  CHECK(run_cli({"--decimal", "3", "variance", "--table", t, "--query", q}).out == "5.333\n");
}

TEST_CASE("oracle and subset sum") {
  auto r = run_cli({"oracle", "--table", data("ex22.tbl"), "--query", "R(\"a\") & S(\"a\")"});
  CHECK(r.out == "2 1/6\n3 1/6\n4 1/6\n6 1/3\n9 1/6\n");
  r = run_cli({"subsetsum", "--values", "2,3,5", "--target", "5"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "probability=1/4\nsubsets=2\n");
}

TEST_CASE("inflate prints one block per copy") {
  auto r = run_cli({"inflate", "--table", data("fig1.tbl"), "--query", "EXISTS x y . R(x,y) & S(x)", "--m", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("# copy 1\n", 0) == 0);
  CHECK(r.out.find("R(\"1#1\",\"2#1\") @ binomial(10, 1/3)") != std::string::npos);
}

TEST_CASE("reduce-demo output") {
  auto r = run_cli({"reduce-demo", "--table", data("reduce_degree2.tbl"), "--query", "EXISTS x y . R(x) & S(y,y)",
                    "--component", "1", "--k", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("  d0: 144 140 128 108 80\n") != std::string::npos);
  CHECK(r.out.find("  d0: 49 48 45 40 33\n") != std::string::npos);
  CHECK(r.out.find("degree=2\ndelta_h_4=-8\ndelta_h_5=-2\np0=1/2\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  const std::string t = data("ex22.tbl");
  CHECK(run_cli({"pqe", "--table", t, "--query", "R(\"a\") & S(\"a\")", "--k", "1", "--mode", "bogus"}).exit_code == 2);
  CHECK(run_cli({"pqe", "--table", t, "--query", "R(\"a\") &", "--k", "1"}).exit_code == 2);
  CHECK(run_cli({"expectation", "--table", data("missing.tbl"), "--query", "EXISTS x . R(x)"}).exit_code == 2);
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  const auto intractable =
      run_cli({"pqe", "--table", data("reduce_degree2.tbl"), "--query", "EXISTS x . R(x) & R(x)", "--k", "1"});
  CHECK(intractable.exit_code == 1);
  CHECK(intractable.err.find("self-join") != std::string::npos);
  CHECK(run_cli({"pqe", "--table", data("reduce_degree2.tbl"), "--query", "EXISTS x . R(x) & R(x)", "--k", "1",
                 "--fallback"})
            .out == "1/2\n");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args = {"moment", "--table", data("fig1.tbl"), "--query", "EXISTS x y . R(x,y) & S(x)", "--order", "3"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}
