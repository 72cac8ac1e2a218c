#include "bagpdb/cli.hpp"

#include <CLI11.hpp>

#include <numeric>
#include <sstream>

#include "bagpdb/analysis.hpp"
#include "bagpdb/errors.hpp"
#include "bagpdb/moments.hpp"
#include "bagpdb/oracle.hpp"
#include "bagpdb/pqe.hpp"
#include "bagpdb/reduction.hpp"
#include "bagpdb/table_io.hpp"

namespace bagpdb {

namespace {

struct Options {
  std::string table_path;
  std::string query_text;
  int decimal = -1;
  unsigned order = 1;
  bool central = false;
  Count k = 0;
  std::string mode = "at_most";
  bool fallback = false;
  std::size_t m = 1;
  std::size_t component = 0;
  std::string oracle = "auto";
  std::vector<Count> values;
  Count target = 1;
};

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  std::string out() const { return out_.str(); }

  void expectation_cmd() { line(num(expectation(table(), query()))); }
  void variance_cmd() { line(num(variance(table(), query()))); }

  void moment_cmd() {
    const auto t = table();
    const auto q = query();
    line(num(o_.central ? central_moment_of_query(t, q, o_.order) : raw_moment_of_query(t, q, o_.order)));
  }

  void pqe_cmd() { line(num(pqe(table(), query(), o_.k, parse_mode(o_.mode), o_.fallback))); }

  void classify_cmd() {
    for (const auto& cq : query().disjuncts) {
      const QueryAnalysis a = analyze(cq);
      line(std::string("self_join_free=") + (a.self_join_free ? "true" : "false") +
           " hierarchical=" + (a.hierarchical ? "true" : "false"));
    }
  }

  void inflate_cmd() {
    const auto result = inflate(table(), single_cq(), o_.m);
    for (std::size_t i = 0; i < result.parts.size(); ++i) {
      line("# copy " + std::to_string(i + 1));
      out_ << format_table(result.parts[i]);
    }
  }

  void oracle_cmd() {
    const auto dist = oracle_count_distribution(table(), query());
    for (const auto& [count, p] : dist.probabilities())
      line(std::to_string(count) + " " + num(p));
  }

  void subsetsum_cmd() {
    const auto [t, q] = subsetsum_table(o_.values, o_.target);
    const Rational p = oracle_count_distribution(t, q).exactly(o_.target);
    const Rational witnesses = p * pow(Rational(2), o_.values.size());
    line("probability=" + num(p));
    line("subsets=" + witnesses.get_num().get_str());
  }

  void reduce_demo_cmd() {
    const auto t = table();
    const CQ q = single_cq();
    ThresholdOracle oracle;
    if (o_.oracle == "pqe") {
      oracle = [](const TIRSTable& tt, const UCQ& qq, Count kk) { return pqe(tt, qq, kk, Mode::AtMost, false); };
    } else if (o_.oracle == "brute") {
      oracle = [](const TIRSTable& tt, const UCQ& qq, Count kk) { return oracle_at_most(tt, qq, kk); };
    } else if (o_.oracle == "auto") {
      oracle = [](const TIRSTable& tt, const UCQ& qq, Count kk) { return pqe(tt, qq, kk, Mode::AtMost, true); };
    } else {
      throw ValidationError("unknown oracle '" + o_.oracle + "' (expected auto, pqe or brute)");
    }
    ComponentTrace tr;
    solve_component(t, q, o_.component, o_.k, oracle, &tr, o_.oracle != "pqe");

    if (!tr.lambda_fact.empty()) line("lambda=" + tr.lambda_fact);
    if (tr.exit == ComponentTrace::Exit::Trivial) {
      line("every fact has multiplicity 0 almost surely");
      line("p0=" + num(tr.result));
      return;
    }
    line("q0=" + num(tr.q0));
    for (std::size_t n = 0; n < tr.g.size(); ++n) line("g(" + std::to_string(n) + ")=" + num(tr.g[n]));
    if (tr.exit == ComponentTrace::Exit::ZeroAtKPlusOne) {
      line("g(" + std::to_string(o_.k + 1) + ") is 0");
      line("p0=" + num(tr.result));
      return;
    }
    const auto low = difference_table(tr.h_low);
    const auto high = difference_table(tr.h_high);
    Integer scale = 1;
    for (const auto* rows : {&low, &high})
      for (const auto& row : *rows)
        for (const auto& v : row) scale = lcm(scale, Integer(v.get_den()));
    const std::string m_low = std::to_string(2 * o_.k);
    const std::string m_high = std::to_string(2 * o_.k + 1);
    line("scale=1/" + scale.get_str());
    print_table("h_" + m_low, low, scale);
    print_table("h_" + m_high, high, scale);
    line("degree=" + std::to_string(tr.low.degree));
    line("delta_h_" + m_low + "=" + scaled(tr.low.value, scale));
    line("delta_h_" + m_high + "=" + scaled(tr.high.value, scale));
    line("p0=" + num(tr.result));
  }

 private:
  static Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }

  static std::string scaled(const Rational& v, const Integer& scale) {
    const Rational s = v * Rational(scale);
    return s.get_num().get_str();
  }

  void print_table(const std::string& name, const std::vector<std::vector<Rational>>& rows, const Integer& scale) {
    line(name + " differences:");
    for (std::size_t l = 0; l < rows.size(); ++l) {
      std::string s = "  d" + std::to_string(l) + ":";
      for (const auto& v : rows[l]) s += " " + scaled(v, scale);
      line(s);
    }
  }

  TIRSTable table() const {
    if (o_.table_path.empty()) return TIRSTable{};
    return load_table(o_.table_path);
  }

  UCQ query() const { return parse_query(o_.query_text); }

  CQ single_cq() const {
    const UCQ q = query();
    if (q.disjuncts.size() != 1) throw ValidationError("this command needs a conjunctive query, not a union");
    return q.disjuncts.front();
  }

  std::string num(const Rational& v) const { return o_.decimal >= 0 ? to_decimal(v, o_.decimal) : to_string(v); }
  void line(const std::string& s) { out_ << s << '\n'; }

  const Options& o_;
  std::ostringstream out_;
};

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Probabilistic query evaluation over bag databases", "bagpdb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--decimal", o.decimal, "Print decimals with this many digits instead of exact rationals")
      ->check(CLI::Range(0, 1000));

  auto with_table = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--table", o.table_path, "Table file");
    if (required) opt->required();
  };
  auto with_query = [&](CLI::App* sub) { sub->add_option("--query", o.query_text, "Boolean UCQ")->required(); };

  auto* expectation_sub = app.add_subcommand("expectation", "Expected answer count");
  with_table(expectation_sub, true);
  with_query(expectation_sub);

  auto* variance_sub = app.add_subcommand("variance", "Variance of the answer count");
  with_table(variance_sub, true);
  with_query(variance_sub);

  auto* moment_sub = app.add_subcommand("moment", "Raw or central moment of the answer count");
  with_table(moment_sub, true);
  with_query(moment_sub);
  moment_sub->add_option("--order", o.order, "Moment order")->required();
  moment_sub->add_flag("--central", o.central, "Central instead of raw moment");

  auto* pqe_sub = app.add_subcommand("pqe", "Probability that the answer count is at most / exactly / at least k");
  with_table(pqe_sub, true);
  with_query(pqe_sub);
  pqe_sub->add_option("--k", o.k, "Threshold")->required();
  pqe_sub->add_option("--mode", o.mode, "at_most, exactly or at_least")
      ->check(CLI::IsMember({"at_most", "exactly", "at_least"}));
  pqe_sub->add_flag("--fallback", o.fallback, "Use exhaustive search when no polynomial-time algorithm applies");

  auto* classify_sub = app.add_subcommand("classify", "Structural properties of each disjunct");
  with_query(classify_sub);

  auto* inflate_sub = app.add_subcommand("inflate", "Inflation of a table for a single-component query");
  with_table(inflate_sub, true);
  with_query(inflate_sub);
  inflate_sub->add_option("--m", o.m, "Number of copies")->required();

  auto* reduce_sub = app.add_subcommand("reduce-demo", "Recover Pr(component count = 0) from k-threshold oracle calls");
  with_table(reduce_sub, true);
  with_query(reduce_sub);
  reduce_sub->add_option("--component", o.component, "Component index (0-based, in query order)");
  reduce_sub->add_option("--k", o.k, "Oracle threshold")->required();
  reduce_sub->add_option("--oracle", o.oracle, "auto, pqe or brute")
      ->check(CLI::IsMember({"auto", "pqe", "brute"}));

  auto* oracle_sub = app.add_subcommand("oracle", "Exact count distribution by world enumeration");
  with_table(oracle_sub, true);
  with_query(oracle_sub);

  auto* subsetsum_sub = app.add_subcommand("subsetsum", "Count subsets with a given sum through a bag table");
  subsetsum_sub->add_option("--values", o.values, "Positive integers")->required()->delimiter(',');
  subsetsum_sub->add_option("--target", o.target, "Target sum")->required();

  CliResult result;
  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err);
    if (result.exit_code != 0) result.exit_code = 2;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  Runner runner(o);
  try {
    if (*expectation_sub) runner.expectation_cmd();
    else if (*variance_sub) runner.variance_cmd();
    else if (*moment_sub) runner.moment_cmd();
    else if (*pqe_sub) runner.pqe_cmd();
    else if (*classify_sub) runner.classify_cmd();
    else if (*inflate_sub) runner.inflate_cmd();
    else if (*reduce_sub) runner.reduce_demo_cmd();
    else if (*oracle_sub) runner.oracle_cmd();
    else if (*subsetsum_sub) runner.subsetsum_cmd();
    result.out = runner.out();
  } catch (const ParseError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const ValidationError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace bagpdb
