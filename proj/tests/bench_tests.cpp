#include <catch2/catch_amalgamated.hpp>

#include "dccasp/bench.hpp"
#include "dccasp/oracle.hpp"
#include "support.hpp"

using namespace dccasp;
using namespace testsupport;

namespace {

struct Built {
  Program p;
  CheckProgram cp;
  SplittingPartition part;

  explicit Built(const std::string& spec) : p(generate_family(parse_family_spec(spec))) {
    cp = build_check_program(p);
    part = build_splitting_partition(cp);
  }

  SolveOutcome run(const std::string& qtext, SolveMode mode) {
    Query q = parse_query(qtext, cp.program);
    SolveConfig cfg;
    cfg.mode = mode;
    return solve(cp, part, q, cfg);
  }
};

}  // namespace

TEST_CASE("family specs parse with nesting", "[bench]") {
  FamilySpec s = parse_family_spec("concat(pigeonhole(3, 4), schur_like(2,5))");
  CHECK(s.name == "concat");
  REQUIRE(s.children.size() == 2);
  CHECK(s.children[0].name == "pigeonhole");
  CHECK(s.children[0].params == std::vector<int>{3, 4});
  CHECK(s.children[1].params == std::vector<int>{2, 5});

  CHECK_THROWS_AS(parse_family_spec("pigeonhole(3,3) junk"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_family_spec("pigeonhole(3"), std::invalid_argument);
  CHECK_THROWS_AS(generate_family(parse_family_spec("mystery(1)")),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_family(parse_family_spec("pigeonhole(3)")),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_family(parse_family_spec("pigeonhole(0,3)")),
                  std::invalid_argument);
}

TEST_CASE("splitting-set profiles of the families", "[bench]") {
  CHECK(Built("chain_puzzle(5)").part.set_count() == 0);
  CHECK(Built("chain_puzzle(5)").cp.subchecks.empty());
  CHECK(Built("pigeonhole(3,3)").part.set_count() == 1);
  CHECK(Built("schur_like(2,4)").part.set_count() == 1);
  CHECK(Built("concat(pigeonhole(3,3), schur_like(2,4))").part.set_count() ==
        2);
  CHECK(Built("concat(pigeonhole(2,2), pigeonhole(2,2), pigeonhole(2,2))")
            .part.set_count() == 3);
}

TEST_CASE("small instances have the counted answer sets", "[bench]") {
  CHECK(enumerate_answer_sets(generate_family(parse_family_spec(
            "pigeonhole(2,2)"))).size() == 2);
  CHECK(enumerate_answer_sets(generate_family(parse_family_spec(
            "pigeonhole(2,3)"))).size() == 6);
  CHECK(enumerate_answer_sets(generate_family(parse_family_spec(
            "schur_like(2,3)"))).size() == 4);
  CHECK(enumerate_answer_sets(generate_family(parse_family_spec(
            "schur_like(2,4)"))).size() == 2);
  // disjoint concatenation multiplies the counts
  CHECK(enumerate_answer_sets(generate_family(parse_family_spec(
            "concat(pigeonhole(2,2), schur_like(2,2))"))).size() == 4);
}

TEST_CASE("generated goals are solvable in both modes", "[bench]") {
  Built ph("pigeonhole(4,4)");
  CHECK(ph.run("solvep", SolveMode::dcc).success());
  CHECK(ph.run("solvep", SolveMode::full).success());

  Built ch("chain_puzzle(8)");
  CHECK(ch.run("solvec", SolveMode::dcc).success());
}

TEST_CASE("search backtracks through failed checks to an answer", "[bench]") {
  // the first part guess for schur_like(2,4) puts 2 and 4 together; the
  // sum-free check rejects it and the solver must revise earlier choices
  Built sc("schur_like(2,4)");
  SolveOutcome out = sc.run("solves", SolveMode::dcc);
  REQUIRE(out.success());
  CHECK(out.stats.subcheck_invocations > sc.cp.subchecks.size());

  auto sets = enumerate_answer_sets(sc.p);
  bool matched = false;
  for (const auto& s : sets)
    if (subset_of(out.answers[0].positives, s)) matched = true;
  CHECK(matched);
}

TEST_CASE("an over-constrained instance fails in both modes", "[bench]") {
  Built ph("pigeonhole(3,2)");
  CHECK(enumerate_answer_sets(ph.p).empty());
  CHECK_FALSE(ph.run("solvep", SolveMode::dcc).success());
  CHECK_FALSE(ph.run("solvep", SolveMode::full).success());
}

TEST_CASE("default queries follow the concat prefixes", "[bench]") {
  FamilySpec s =
      parse_family_spec("concat(pigeonhole(2,2), schur_like(2,3))");
  CHECK(default_queries(s) ==
        std::vector<std::string>{"c1_solvep", "c2_solves"});
  CHECK(default_queries(parse_family_spec("chain_puzzle(3)")) ==
        std::vector<std::string>{"solvec"});
}

TEST_CASE("dcc counters for one component ignore the other", "[bench]") {
  Built alone("pigeonhole(3,3)");
  SolveOutcome base = alone.run("solvep", SolveMode::dcc);
  REQUIRE(base.success());

  Built both("concat(pigeonhole(3,3), schur_like(2,4))");
  SolveOutcome dcc = both.run("c1_solvep", SolveMode::dcc);
  REQUIRE(dcc.success());
  CHECK(dcc.stats.subcheck_invocations == base.stats.subcheck_invocations);
  CHECK(dcc.stats.resolution_steps == base.stats.resolution_steps);
  CHECK(dcc.stats.splitting_sets_touched == 1);

  SolveOutcome full = both.run("c1_solvep", SolveMode::full);
  REQUIRE(full.success());
  CHECK(full.stats.subcheck_invocations >= both.cp.subchecks.size());
  CHECK(full.stats.splitting_sets_touched == 2);
  CHECK(full.stats.subcheck_invocations > dcc.stats.subcheck_invocations);
}

TEST_CASE("counters are insensitive to extra disjoint components", "[bench]") {
  Built two("concat(pigeonhole(3,3), schur_like(2,4))");
  Built three("concat(pigeonhole(3,3), schur_like(2,4), chain_puzzle(4))");
  SolveOutcome a = two.run("c1_solvep", SolveMode::dcc);
  SolveOutcome b = three.run("c1_solvep", SolveMode::dcc);
  REQUIRE(a.success());
  REQUIRE(b.success());
  CHECK(a.stats.subcheck_invocations == b.stats.subcheck_invocations);
  CHECK(a.stats.resolution_steps == b.stats.resolution_steps);
}

TEST_CASE("an OLON-free problem runs checkless in both modes", "[bench]") {
  Built ch("chain_puzzle(10)");
  SolveOutcome dcc = ch.run("solvec", SolveMode::dcc);
  SolveOutcome full = ch.run("solvec", SolveMode::full);
  REQUIRE(dcc.success());
  REQUIRE(full.success());
  CHECK(dcc.stats.subcheck_invocations == 0);
  CHECK(full.stats.subcheck_invocations == 0);
  CHECK(dcc.stats.resolution_steps == full.stats.resolution_steps);
}

TEST_CASE("run_bench emits one row per problem, query and mode", "[bench]") {
  BenchSpec spec;
  spec.problems.push_back({"concat(pigeonhole(2,2), schur_like(2,3))", {}});
  spec.problems.push_back({"chain_puzzle(3)", {}});
  spec.repetitions = 2;
  spec.min_sample_ms = 0.05;

  std::vector<BenchRow> rows = run_bench(spec);
  REQUIRE(rows.size() == 2 * 2 + 1 * 2);  // two default queries, then one

  CHECK(rows[0].problem == "concat(pigeonhole(2,2), schur_like(2,3))");
  CHECK(rows[0].query == "c1_solvep");
  CHECK(rows[0].mode == "dcc");
  CHECK(rows[1].mode == "full");
  CHECK(rows[2].query == "c2_solves");
  CHECK(rows[4].problem == "chain_puzzle(3)");

  for (const BenchRow& r : rows) {
    CHECK(r.wall_seconds > 0.0);
    CHECK(r.answers == 1);
    CHECK_FALSE(r.step_limit_exceeded);
    CHECK(r.splitting_sets_touched <= r.splitting_sets_total);
    if (r.mode == "dcc" && r.query == "c1_solvep")
      CHECK(r.splitting_sets_touched == 1);
  }
}

TEST_CASE("step-limited rows are flagged, not dropped", "[bench]") {
  BenchSpec spec;
  spec.problems.push_back({"pigeonhole(3,3)", {}});
  spec.repetitions = 1;
  spec.min_sample_ms = 0.01;
  spec.step_limit = 4;
  std::vector<BenchRow> rows = run_bench(spec);
  REQUIRE(rows.size() == 2);
  for (const BenchRow& r : rows) {
    CHECK(r.step_limit_exceeded);
    CHECK(r.answers == 0);
  }
}

TEST_CASE("bench renderings carry the counters", "[bench]") {
  BenchSpec spec;
  spec.problems.push_back({"chain_puzzle(3)", {}});
  spec.modes = {SolveMode::dcc};
  spec.repetitions = 1;
  spec.min_sample_ms = 0.05;
  std::vector<BenchRow> rows = run_bench(spec);
  REQUIRE(rows.size() == 1);

  std::string table = render_bench_table(rows);
  CHECK(table.find("problem") != std::string::npos);
  CHECK(table.find("chain_puzzle(3)") != std::string::npos);
  CHECK(table.find("solvec") != std::string::npos);

  std::string csv = render_bench_csv(rows);
  CHECK(csv.rfind("problem,query,mode,wall_seconds", 0) == 0);
  CHECK(csv.find("\"chain_puzzle(3)\",\"solvec\",dcc,") != std::string::npos);

  nlohmann::json j = bench_rows_to_json(rows);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["problem"] == "chain_puzzle(3)");
  CHECK(j[0]["subcheck_invocations"] == 0);
  CHECK(j[0]["splitting_sets_total"] == 0);
}
