#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bagpdb/analysis.hpp"
#include "bagpdb/cli.hpp"
#include "bagpdb/errors.hpp"
#include "bagpdb/moments.hpp"
#include "bagpdb/oracle.hpp"
#include "bagpdb/pqe.hpp"
#include "bagpdb/reduction.hpp"
#include "bagpdb/table_io.hpp"

namespace py = pybind11;
using namespace bagpdb;

namespace {

// Rationals cross the boundary as "num/den" strings.
std::string str(const Rational& r) { return to_string(r); }

}  // namespace

PYBIND11_MODULE(_bagpdb, m) {
  m.doc() = "Exact evaluation of queries over tuple-independent bag databases";

  auto base = py::register_exception<Error>(m, "BagpdbError", PyExc_ValueError);
  py::register_exception<IntractableError>(m, "IntractableError", base.ptr());

  m.def("normalize_table", [](const std::string& text) { return format_table(parse_table(text)); },
        py::arg("table"));
  m.def("normalize_query", [](const std::string& text) { return to_string(parse_query(text)); }, py::arg("query"));

  m.def("classify",
        [](const std::string& query) {
          std::vector<std::pair<bool, bool>> out;
          for (const auto& cq : parse_query(query).disjuncts) {
            const auto a = analyze(cq);
            out.emplace_back(a.self_join_free, a.hierarchical);
          }
          return out;
        },
        py::arg("query"));

  m.def("expectation",
        [](const std::string& table, const std::string& query) {
          return str(expectation(parse_table(table), parse_query(query)));
        },
        py::arg("table"), py::arg("query"));
  m.def("variance",
        [](const std::string& table, const std::string& query) {
          return str(variance(parse_table(table), parse_query(query)));
        },
        py::arg("table"), py::arg("query"));
  m.def("moment",
        [](const std::string& table, const std::string& query, unsigned order, bool central) {
          const auto t = parse_table(table);
          const auto q = parse_query(query);
          return str(central ? central_moment_of_query(t, q, order) : raw_moment_of_query(t, q, order));
        },
        py::arg("table"), py::arg("query"), py::arg("order"), py::arg("central") = false);
  m.def("chebyshev",
        [](const std::string& table, const std::string& query, Count k) {
          const auto b = chebyshev_bound(parse_table(table), parse_query(query), k);
          return std::make_pair(str(b.lo), str(b.hi));
        },
        py::arg("table"), py::arg("query"), py::arg("k"));

  m.def("pqe",
        [](const std::string& table, const std::string& query, Count k, const std::string& mode, bool fallback) {
          return str(pqe(parse_table(table), parse_query(query), k, parse_mode(mode), fallback));
        },
        py::arg("table"), py::arg("query"), py::arg("k"), py::arg("mode") = "at_most", py::arg("fallback") = false);

  m.def("count_distribution",
        [](const std::string& table, const std::string& query) {
          std::vector<std::pair<Count, std::string>> out;
          const auto dist = oracle_count_distribution(parse_table(table), parse_query(query));
          for (const auto& [count, p] : dist.probabilities()) out.emplace_back(count, str(p));
          return out;
        },
        py::arg("table"), py::arg("query"));

  m.def("inflate",
        [](const std::string& table, const std::string& query, std::size_t copies) {
          const auto q = parse_query(query);
          if (q.disjuncts.size() != 1) throw PreconditionError("inflation needs a single conjunctive query");
          const auto result = inflate(parse_table(table), q.disjuncts[0], copies);
          std::vector<std::string> out;
          for (const auto& part : result.parts) out.push_back(format_table(part));
          return out;
        },
        py::arg("table"), py::arg("query"), py::arg("copies"));

  m.def("solve_component",
        [](const std::string& table, const std::string& query, std::size_t component, Count k) {
          const auto q = parse_query(query);
          if (q.disjuncts.size() != 1) throw PreconditionError("the reduction needs a single conjunctive query");
          const ThresholdOracle oracle = [](const TIRSTable& t, const UCQ& u, Count kk) {
            return oracle_at_most(t, u, kk);
          };
          return str(solve_component(parse_table(table), q.disjuncts[0], component, k, oracle));
        },
        py::arg("table"), py::arg("query"), py::arg("component"), py::arg("k"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          const auto r = run_cli(args);
          return py::make_tuple(r.exit_code, r.out, r.err);
        },
        py::arg("args"));
}
