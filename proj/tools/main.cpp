// Command line front end.
//
// Subcommands:
//   analyze    compile a program and print its checks and splitting sets
//   solve      answer a query top-down (dcc or full check scheduling)
//   enumerate  list all answer sets by exhaustive search (small programs)
//   bench      run the built-in benchmark families and report counters
//
// Exit codes: 0 success, 1 query failed / no answer sets, 2 usage or parse
// error, 3 resource limit hit (step limit with no answers, atom limit).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dccasp/dccasp.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedProgram {
  dccasp::Program program;
  std::optional<dccasp::Query> query;  // from a ?- directive, if any
};

LoadedProgram load_programs(const std::vector<std::string>& paths) {
  LoadedProgram lp;
  for (const std::string& path : paths) {
    std::optional<dccasp::Query> q;
    try {
      q = dccasp::parse_file_into(lp.program, read_file(path));
    } catch (const dccasp::ParseError& e) {
      throw std::runtime_error(path + ":" + e.what());
    }
    if (q) {
      if (lp.query)
        throw std::runtime_error("multiple query directives across files");
      lp.query = std::move(q);
    }
  }
  return lp;
}

std::vector<std::string> sorted_names(const dccasp::Program& p,
                                      const std::vector<dccasp::AtomId>& ids) {
  std::vector<std::string> names;
  names.reserve(ids.size());
  for (dccasp::AtomId a : ids) names.push_back(p.atom_name(a));
  std::sort(names.begin(), names.end());
  return names;
}

// "{ c, not a, not b }": positive literals sorted by name, then negative.
std::string render_answer(const dccasp::Program& p,
                          const dccasp::PartialAnswerSet& ans,
                          bool positives_only) {
  std::vector<std::string> parts = sorted_names(p, ans.positives);
  if (!positives_only)
    for (const std::string& n : sorted_names(p, ans.negatives))
      parts.push_back("not " + n);
  if (parts.empty()) return "{ }";
  std::string out = "{ ";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += " }";
  return out;
}

json answer_to_json(const dccasp::Program& p,
                    const dccasp::PartialAnswerSet& ans, bool positives_only) {
  json j;
  j["positives"] = sorted_names(p, ans.positives);
  if (!positives_only) j["negatives"] = sorted_names(p, ans.negatives);
  return j;
}

json stats_to_json(const dccasp::SolveStats& st) {
  return {{"resolution_steps", st.resolution_steps},
          {"subcheck_invocations", st.subcheck_invocations},
          {"check_activations", st.check_activations},
          {"splitting_sets_touched", st.splitting_sets_touched}};
}

dccasp::EventHook trace_hook(const dccasp::CheckProgram& cp) {
  return [&cp](const dccasp::SolveEvent& ev) {
    using Kind = dccasp::SolveEvent::Kind;
    const dccasp::Program& p = cp.program;
    auto check = [&](std::uint32_t ci) {
      return p.atom_name(cp.subchecks[ci].check_atom);
    };
    switch (ev.kind) {
      case Kind::call:
        std::cerr << "call " << to_string(p, ev.literal)
                  << " depth=" << ev.depth << "\n";
        break;
      case Kind::succeed:
        std::cerr << "succeed " << to_string(p, ev.literal) << "\n";
        break;
      case Kind::fail:
        std::cerr << "fail " << to_string(p, ev.literal) << "\n";
        break;
      case Kind::activate_check:
        std::cerr << "activate " << check(ev.check) << "\n";
        break;
      case Kind::check_begin:
        std::cerr << "begin " << check(ev.check) << "\n";
        break;
    }
  };
}

int do_analyze(const std::vector<std::string>& files,
               const std::string& format) {
  LoadedProgram lp = load_programs(files);
  dccasp::CheckProgram cp = dccasp::build_check_program(lp.program);
  dccasp::SplittingPartition part = dccasp::build_splitting_partition(cp);
  if (format == "json")
    std::cout << dccasp::analysis_to_json(cp, part).dump(2) << "\n";
  else
    std::cout << dccasp::render_analysis(cp, part);
  return 0;
}

int do_solve(const std::vector<std::string>& files,
             const std::string& query_text, const std::string& mode,
             std::size_t max_answers, std::uint64_t step_limit,
             const std::string& format, bool trace, bool positives_only) {
  LoadedProgram lp = load_programs(files);
  dccasp::Query q;
  if (!query_text.empty()) {
    q = dccasp::parse_query(query_text, lp.program);
  } else if (lp.query) {
    q = *lp.query;
  } else {
    std::cerr << "error: no query given (use --query or a ?- directive)\n";
    return 2;
  }

  dccasp::CheckProgram cp = dccasp::build_check_program(lp.program);
  dccasp::SplittingPartition part = dccasp::build_splitting_partition(cp);
  dccasp::SolveConfig cfg;
  cfg.mode = mode == "full" ? dccasp::SolveMode::full : dccasp::SolveMode::dcc;
  cfg.max_answers = max_answers;
  cfg.step_limit = step_limit;
  dccasp::EventHook hook;
  if (trace) hook = trace_hook(cp);

  dccasp::SolveOutcome out = dccasp::solve(cp, part, q, cfg, hook);

  if (format == "json") {
    json j;
    j["query"] = to_string(lp.program, q);
    j["mode"] = mode;
    json answers = json::array();
    for (const auto& ans : out.answers)
      answers.push_back(answer_to_json(cp.program, ans, positives_only));
    j["answers"] = std::move(answers);
    j["count"] = out.answers.size();
    j["step_limit_exceeded"] = out.step_limit_exceeded;
    j["stats"] = stats_to_json(out.stats);
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < out.answers.size(); ++i)
      std::cout << "answer " << i + 1 << ": "
                << render_answer(cp.program, out.answers[i], positives_only)
                << "\n";
    if (out.answers.empty())
      std::cout << (out.step_limit_exceeded ? "no answers (step limit)\n"
                                            : "no answers\n");
  }
  if (!out.answers.empty()) return 0;
  return out.step_limit_exceeded ? 3 : 1;
}

int do_enumerate(const std::vector<std::string>& files, std::size_t atom_limit,
                 const std::string& format) {
  LoadedProgram lp = load_programs(files);
  std::vector<std::vector<dccasp::AtomId>> sets;
  try {
    sets = dccasp::enumerate_answer_sets(lp.program, atom_limit);
  } catch (const dccasp::OracleLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (format == "json") {
    json j;
    json arr = json::array();
    for (const auto& s : sets) {
      json names = json::array();
      for (dccasp::AtomId a : s) names.push_back(lp.program.atom_name(a));
      arr.push_back(std::move(names));
    }
    j["answer_sets"] = std::move(arr);
    j["count"] = sets.size();
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < sets.size(); ++i)
      std::cout << "answer set " << i + 1 << ": "
                << dccasp::render_atom_set(lp.program, sets[i]) << "\n";
    std::cout << "total: " << sets.size() << "\n";
  }
  return sets.empty() ? 1 : 0;
}

int do_bench(const std::vector<std::string>& families,
             const std::vector<std::string>& queries, const std::string& modes,
             int reps, double min_sample_ms, std::uint64_t step_limit,
             const std::string& format) {
  dccasp::BenchSpec spec;
  for (const std::string& fam : families)
    spec.problems.push_back({fam, queries});
  spec.modes.clear();
  std::stringstream ms(modes);
  std::string tok;
  while (std::getline(ms, tok, ',')) {
    if (tok == "dcc")
      spec.modes.push_back(dccasp::SolveMode::dcc);
    else if (tok == "full")
      spec.modes.push_back(dccasp::SolveMode::full);
    else
      throw std::runtime_error("unknown mode '" + tok + "'");
  }
  if (spec.modes.empty()) throw std::runtime_error("no benchmark modes");
  spec.repetitions = reps;
  spec.min_sample_ms = min_sample_ms;
  spec.step_limit = step_limit;

  std::vector<dccasp::BenchRow> rows = dccasp::run_bench(spec);
  if (format == "csv")
    std::cout << dccasp::render_bench_csv(rows);
  else if (format == "json")
    std::cout << dccasp::bench_rows_to_json(rows).dump(2) << "\n";
  else
    std::cout << dccasp::render_bench_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "goal-directed answer set solver with dynamic consistency checking"};
  app.require_subcommand(1);

  std::vector<std::string> an_files;
  std::string an_format = "text";
  auto* cmd_analyze =
      app.add_subcommand("analyze", "print checks and splitting sets");
  cmd_analyze->add_option("files", an_files, "program files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_analyze->add_option("--format", an_format, "output format")
      ->envname("DCCASP_FORMAT")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> so_files;
  std::string so_query;
  std::string so_mode = "dcc";
  std::size_t so_max_answers = 1;
  std::uint64_t so_step_limit = 0;
  std::string so_format = "text";
  bool so_trace = false;
  bool so_positives_only = false;
  auto* cmd_solve = app.add_subcommand("solve", "answer a query top-down");
  cmd_solve->add_option("files", so_files, "program files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_solve->add_option("-q,--query", so_query,
                        "query literals, e.g. 'p, not q' "
                        "(overrides a ?- directive)");
  cmd_solve->add_option("--mode", so_mode, "check scheduling mode")
      ->check(CLI::IsMember({"dcc", "full"}));
  cmd_solve->add_flag_callback(
      "--full", [&so_mode] { so_mode = "full"; }, "shorthand for --mode full");
  cmd_solve
      ->add_option("-n,--max-answers", so_max_answers,
                   "stop after this many answers")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("--step-limit", so_step_limit,
                        "abort after this many resolution steps "
                        "(0 = unbounded)");
  cmd_solve->add_option("--format", so_format, "output format")
      ->envname("DCCASP_FORMAT")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_solve->add_flag("--trace", so_trace, "stream solver events to stderr");
  cmd_solve->add_flag("--positives-only", so_positives_only,
                      "print only the positive literals of each answer");

  std::vector<std::string> en_files;
  std::size_t en_atom_limit = 24;
  std::string en_format = "text";
  auto* cmd_enumerate =
      app.add_subcommand("enumerate", "list all answer sets (small programs)");
  cmd_enumerate->add_option("files", en_files, "program files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_enumerate->add_option("--atom-limit", en_atom_limit,
                            "refuse programs with more atoms than this");
  cmd_enumerate->add_option("--format", en_format, "output format")
      ->envname("DCCASP_FORMAT")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> be_families;
  std::vector<std::string> be_queries;
  std::string be_modes = "dcc,full";
  int be_reps = 5;
  double be_min_sample_ms = 10.0;
  std::uint64_t be_step_limit = 0;
  std::string be_format = "text";
  auto* cmd_bench =
      app.add_subcommand("bench", "run built-in benchmark families");
  cmd_bench
      ->add_option("--family", be_families,
                   "family spec, e.g. 'pigeonhole(4,4)' or "
                   "'concat(pigeonhole(4,4),schur_like(3,9))' (repeatable)")
      ->required();
  cmd_bench->add_option("--query", be_queries,
                        "query to run against every family "
                        "(default: each family's goal atom)");
  cmd_bench->add_option("--modes", be_modes,
                        "comma-separated subset of dcc,full");
  cmd_bench->add_option("--reps", be_reps, "timing repetitions")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--min-sample-ms", be_min_sample_ms,
                        "batch solves until a sample is at least this long");
  cmd_bench->add_option("--step-limit", be_step_limit,
                        "per-solve resolution step limit (0 = unbounded)");
  cmd_bench->add_option("--format", be_format, "output format")
      ->envname("DCCASP_FORMAT")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_analyze) return do_analyze(an_files, an_format);
    if (*cmd_solve)
      return do_solve(so_files, so_query, so_mode, so_max_answers,
                      so_step_limit, so_format, so_trace, so_positives_only);
    if (*cmd_enumerate) return do_enumerate(en_files, en_atom_limit, en_format);
    if (*cmd_bench)
      return do_bench(be_families, be_queries, be_modes, be_reps,
                      be_min_sample_ms, be_step_limit, be_format);
  } catch (const dccasp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
