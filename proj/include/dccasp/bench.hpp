// Benchmark problem families and an instrumented runner.
//
// Families:
//   pigeonhole(m, n)   place m pigeons into n holes; per-object choice loops
//                      plus integrity constraints force complete sub-models.
//                      One splitting set. Goal atom: solvep.
//   schur_like(k, n)   partition 1..n into k sum-free parts. One splitting
//                      set. Goal atom: solves.
//   chain_puzzle(n)    a layered chain of choices with no odd loops at all:
//                      zero checks, zero splitting sets. Goal atom: solvec.
//   concat(s1, s2, ..) component programs with per-component atom prefixes
//                      c1_, c2_, ...; splitting sets add up.
//
// Counters (sub-check invocations, resolution steps) are the primary
// signal; wall times are reported but carry the usual noise.
#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dccasp/checks.hpp"
#include "dccasp/parser.hpp"
#include "dccasp/program.hpp"
#include "dccasp/solver.hpp"
#include "dccasp/splitting.hpp"

namespace dccasp {

struct FamilySpec {
  std::string name;
  std::vector<int> params;          // leaf families
  std::vector<FamilySpec> children;  // concat
};

namespace detail {

inline void skip_spaces(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
}

inline FamilySpec parse_family_spec(std::string_view text, std::size_t& pos) {
  skip_spaces(text, pos);
  FamilySpec spec;
  while (pos < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[pos])) ||
          text[pos] == '_'))
    spec.name += text[pos++];
  if (spec.name.empty())
    throw std::invalid_argument("expected family name in spec");
  skip_spaces(text, pos);
  if (pos == text.size() || text[pos] != '(') return spec;
  ++pos;  // '('
  while (true) {
    skip_spaces(text, pos);
    if (pos == text.size())
      throw std::invalid_argument("unterminated family parameter list");
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      int v = 0;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + (text[pos++] - '0');
      spec.params.push_back(v);
    } else {
      spec.children.push_back(parse_family_spec(text, pos));
    }
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      return spec;
    }
    throw std::invalid_argument("expected ',' or ')' in family spec");
  }
}

inline void require_params(const FamilySpec& s, std::size_t n) {
  if (s.params.size() != n || !s.children.empty())
    throw std::invalid_argument("family '" + s.name + "' expects " +
                                std::to_string(n) + " integer parameters");
  for (int v : s.params)
    if (v < 1)
      throw std::invalid_argument("family '" + s.name +
                                  "' parameters must be >= 1");
}

inline std::string idx1(const std::string& base, int i) {
  return base + "(" + std::to_string(i) + ")";
}
inline std::string idx2(const std::string& base, int i, int j) {
  return base + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

inline void gen_pigeonhole(Program& p, const std::string& pre, int m, int n) {
  auto in = [&](int i, int j) { return p.intern(idx2(pre + "in", i, j)); };
  auto out = [&](int i, int j) { return p.intern(idx2(pre + "out", i, j)); };
  auto placed = [&](int i) { return p.intern(idx1(pre + "placed", i)); };
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) {
      p.add_rule(in(i, j), {neg(out(i, j))});
      p.add_rule(out(i, j), {neg(in(i, j))});
    }
  // hole order rotated per pigeon so the first guess is a diagonal
  for (int i = 1; i <= m; ++i)
    for (int r = 0; r < n; ++r)
      p.add_rule(placed(i), {pos(in(i, (i - 1 + r) % n + 1))});
  for (int i = 1; i <= m; ++i)
    p.add_rule(std::nullopt, {neg(placed(i))});
  for (int j = 1; j <= n; ++j)
    for (int i1 = 1; i1 <= m; ++i1)
      for (int i2 = i1 + 1; i2 <= m; ++i2)
        p.add_rule(std::nullopt, {pos(in(i1, j)), pos(in(i2, j))});
  for (int i = 1; i <= m; ++i)
    for (int j1 = 1; j1 <= n; ++j1)
      for (int j2 = j1 + 1; j2 <= n; ++j2)
        p.add_rule(std::nullopt, {pos(in(i, j1)), pos(in(i, j2))});
  std::vector<Literal> goal;
  for (int i = 1; i <= m; ++i) goal.push_back(pos(placed(i)));
  p.add_rule(p.intern(pre + "solvep"), std::move(goal));
}

inline void gen_schur_like(Program& p, const std::string& pre, int k, int n) {
  auto inp = [&](int i, int q) { return p.intern(idx2(pre + "inpart", i, q)); };
  auto outp = [&](int i, int q) {
    return p.intern(idx2(pre + "outpart", i, q));
  };
  auto assigned = [&](int i) { return p.intern(idx1(pre + "assigned", i)); };
  for (int i = 1; i <= n; ++i)
    for (int q = 1; q <= k; ++q) {
      p.add_rule(inp(i, q), {neg(outp(i, q))});
      p.add_rule(outp(i, q), {neg(inp(i, q))});
    }
  for (int i = 1; i <= n; ++i)
    for (int r = 0; r < k; ++r)
      p.add_rule(assigned(i), {pos(inp(i, (i - 1 + r) % k + 1))});
  for (int i = 1; i <= n; ++i)
    p.add_rule(std::nullopt, {neg(assigned(i))});
  for (int i = 1; i <= n; ++i)
    for (int q1 = 1; q1 <= k; ++q1)
      for (int q2 = q1 + 1; q2 <= k; ++q2)
        p.add_rule(std::nullopt, {pos(inp(i, q1)), pos(inp(i, q2))});
  for (int q = 1; q <= k; ++q)
    for (int x = 1; x <= n; ++x)
      for (int y = x; x + y <= n; ++y) {
        std::vector<Literal> body{pos(inp(x, q))};
        if (y != x) body.push_back(pos(inp(y, q)));
        body.push_back(pos(inp(x + y, q)));
        p.add_rule(std::nullopt, std::move(body));
      }
  std::vector<Literal> goal;
  for (int i = 1; i <= n; ++i) goal.push_back(pos(assigned(i)));
  p.add_rule(p.intern(pre + "solves"), std::move(goal));
}

inline void gen_chain_puzzle(Program& p, const std::string& pre, int n) {
  auto step = [&](int i) { return p.intern(idx1(pre + "step", i)); };
  auto pick = [&](int i) { return p.intern(idx1(pre + "pick", i)); };
  auto skip = [&](int i) { return p.intern(idx1(pre + "skip", i)); };
  p.add_rule(step(0), {});
  for (int i = 1; i <= n; ++i) {
    p.add_rule(pick(i), {neg(skip(i))});
    p.add_rule(skip(i), {neg(pick(i))});
    p.add_rule(step(i), {pos(step(i - 1)), pos(pick(i))});
    p.add_rule(step(i), {pos(step(i - 1)), pos(skip(i))});
  }
  p.add_rule(p.intern(pre + "solvec"), {pos(step(n))});
}

inline void generate_into(Program& p, const FamilySpec& spec,
                          const std::string& pre);

inline void gen_concat(Program& p, const FamilySpec& spec,
                       const std::string& pre) {
  if (spec.children.empty() || !spec.params.empty())
    throw std::invalid_argument("concat expects family sub-specs");
  for (std::size_t i = 0; i < spec.children.size(); ++i)
    generate_into(p, spec.children[i],
                  pre + "c" + std::to_string(i + 1) + "_");
}

inline void generate_into(Program& p, const FamilySpec& spec,
                          const std::string& pre) {
  if (spec.name == "pigeonhole") {
    require_params(spec, 2);
    gen_pigeonhole(p, pre, spec.params[0], spec.params[1]);
  } else if (spec.name == "schur_like") {
    require_params(spec, 2);
    gen_schur_like(p, pre, spec.params[0], spec.params[1]);
  } else if (spec.name == "chain_puzzle") {
    require_params(spec, 1);
    gen_chain_puzzle(p, pre, spec.params[0]);
  } else if (spec.name == "concat") {
    gen_concat(p, spec, pre);
  } else {
    throw std::invalid_argument("unknown benchmark family '" + spec.name +
                                "'");
  }
}

inline void default_queries_into(const FamilySpec& spec,
                                 const std::string& pre,
                                 std::vector<std::string>& out) {
  if (spec.name == "pigeonhole") {
    out.push_back(pre + "solvep");
  } else if (spec.name == "schur_like") {
    out.push_back(pre + "solves");
  } else if (spec.name == "chain_puzzle") {
    out.push_back(pre + "solvec");
  } else if (spec.name == "concat") {
    for (std::size_t i = 0; i < spec.children.size(); ++i)
      default_queries_into(spec.children[i],
                           pre + "c" + std::to_string(i + 1) + "_", out);
  }
}

}  // namespace detail

inline FamilySpec parse_family_spec(std::string_view text) {
  std::size_t pos = 0;
  FamilySpec spec = detail::parse_family_spec(text, pos);
  detail::skip_spaces(text, pos);
  if (pos != text.size())
    throw std::invalid_argument("trailing characters in family spec");
  return spec;
}

inline Program generate_family(const FamilySpec& spec) {
  Program p;
  detail::generate_into(p, spec, "");
  return p;
}

inline Program generate_family(const std::string& name,
                               const std::vector<int>& params) {
  FamilySpec spec;
  spec.name = name;
  spec.params = params;
  return generate_family(spec);
}

inline std::vector<std::string> default_queries(const FamilySpec& spec) {
  std::vector<std::string> out;
  detail::default_queries_into(spec, "", out);
  return out;
}

// ---- runner ----------------------------------------------------------------

struct BenchSpec {
  struct Problem {
    std::string family;                // e.g. "concat(pigeonhole(3,3),...)"
    std::vector<std::string> queries;  // empty = family defaults
  };
  std::vector<Problem> problems;
  std::vector<SolveMode> modes{SolveMode::dcc, SolveMode::full};
  int repetitions = 5;
  double min_sample_ms = 10.0;  // batch fast solves up to this much time
  std::uint64_t step_limit = 0;
};

struct BenchRow {
  std::string problem;
  std::string query;
  std::string mode;
  double wall_seconds = 0.0;  // median per-solve time over repetitions
  std::uint64_t resolution_steps = 0;
  std::uint64_t subcheck_invocations = 0;
  std::size_t splitting_sets_total = 0;
  std::size_t splitting_sets_touched = 0;
  std::size_t answers = 0;
  bool step_limit_exceeded = false;
};

inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (const auto& prob : spec.problems) {
    FamilySpec fam = parse_family_spec(prob.family);
    Program base = generate_family(fam);
    CheckProgram cp = build_check_program(base);
    SplittingPartition part = build_splitting_partition(cp);
    std::vector<std::string> queries =
        prob.queries.empty() ? default_queries(fam) : prob.queries;
    for (const std::string& qtext : queries) {
      Query q = parse_query(qtext, cp.program);
      for (SolveMode mode : spec.modes) {
        SolveConfig cfg;
        cfg.mode = mode;
        cfg.step_limit = spec.step_limit;
        Solver solver(cp, part, cfg);

        BenchRow row;
        row.problem = prob.family;
        row.query = qtext;
        row.mode = mode == SolveMode::dcc ? "dcc" : "full";
        row.splitting_sets_total = part.set_count();

        SolveOutcome first = solver.solve(q);
        row.resolution_steps = first.stats.resolution_steps;
        row.subcheck_invocations = first.stats.subcheck_invocations;
        row.splitting_sets_touched = first.stats.splitting_sets_touched;
        row.answers = first.answers.size();
        row.step_limit_exceeded = first.step_limit_exceeded;

        std::vector<double> samples;
        for (int rep = 0; rep < std::max(1, spec.repetitions); ++rep) {
          int iters = 0;
          auto t0 = clock::now();
          double elapsed_ms = 0.0;
          do {
            solver.solve(q);
            ++iters;
            elapsed_ms = std::chrono::duration<double, std::milli>(
                             clock::now() - t0)
                             .count();
          } while (elapsed_ms < spec.min_sample_ms);
          samples.push_back(elapsed_ms / iters);
        }
        std::sort(samples.begin(), samples.end());
        row.wall_seconds = samples[samples.size() / 2] / 1000.0;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline std::string render_bench_table(const std::vector<BenchRow>& rows) {
  const char* headers[] = {"problem", "query",   "mode",
                           "wall_s",  "steps",   "checks",
                           "sets",    "touched", "answers", "limited"};
  std::vector<std::vector<std::string>> cells;
  for (const BenchRow& r : rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", r.wall_seconds);
    cells.push_back({r.problem, r.query, r.mode, wall,
                     std::to_string(r.resolution_steps),
                     std::to_string(r.subcheck_invocations),
                     std::to_string(r.splitting_sets_total),
                     std::to_string(r.splitting_sets_touched),
                     std::to_string(r.answers),
                     r.step_limit_exceeded ? "yes" : ""});
  }
  const std::size_t ncols = std::size(headers);
  std::vector<std::size_t> width(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    width[c] = std::string(headers[c]).size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto emit_row = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c) line += "  ";
      // left-align the first three text columns, right-align numbers
      std::size_t pad = width[c] - row[c].size();
      if (c < 3) {
        line += row[c];
        if (c + 1 < ncols) line += std::string(pad, ' ');
      } else {
        line += std::string(pad, ' ');
        line += row[c];
      }
    }
    line += "\n";
    return line;
  };
  std::vector<std::string> head(headers, headers + ncols);
  std::string out = emit_row(head);
  for (const auto& row : cells) out += emit_row(row);
  return out;
}

inline std::string render_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "problem,query,mode,wall_seconds,resolution_steps,"
      "subcheck_invocations,splitting_sets_total,splitting_sets_touched,"
      "answers,step_limit_exceeded\n";
  for (const BenchRow& r : rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.9f", r.wall_seconds);
    out += "\"" + r.problem + "\"," + "\"" + r.query + "\"," + r.mode + "," +
           wall + "," + std::to_string(r.resolution_steps) + "," +
           std::to_string(r.subcheck_invocations) + "," +
           std::to_string(r.splitting_sets_total) + "," +
           std::to_string(r.splitting_sets_touched) + "," +
           std::to_string(r.answers) + "," +
           (r.step_limit_exceeded ? "1" : "0") + "\n";
  }
  return out;
}

inline nlohmann::json bench_rows_to_json(const std::vector<BenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    out.push_back({{"problem", r.problem},
                   {"query", r.query},
                   {"mode", r.mode},
                   {"wall_seconds", r.wall_seconds},
                   {"resolution_steps", r.resolution_steps},
                   {"subcheck_invocations", r.subcheck_invocations},
                   {"splitting_sets_total", r.splitting_sets_total},
                   {"splitting_sets_touched", r.splitting_sets_touched},
                   {"answers", r.answers},
                   {"step_limit_exceeded", r.step_limit_exceeded}});
  }
  return out;
}

}  // namespace dccasp
