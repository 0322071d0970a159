#pragma once

// Shared fixtures: small hand-written programs with known behavior, a random
// program generator, and slow independent reimplementations used to
// cross-check the library.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dccasp/dccasp.hpp"

namespace testsupport {

// Four rules; the rule `r :- not p.` sits on an even loop and needs no
// check, so the generated check names skip one ordinal.
inline constexpr const char* kOddLoopMix =
    "p :- q.\n"
    "q :- not r, not p.\n"
    "r :- not p.\n"
    ":- q, r.\n";

inline constexpr const char* kOddLoopMixChecks =
    "chk_1 :- p.\n"
    "chk_1 :- not q.\n"
    "chk_2 :- r.\n"
    "chk_2 :- p.\n"
    "chk_2 :- q.\n"
    "chk_4 :- not q.\n"
    "chk_4 :- not r.\n"
    "nmr_check :- chk_1, chk_2, chk_4.\n";

// Even loop {b, c} feeding a constraint through p and q; the single
// consistent answer set is {c}. Querying `a` must fail even though {a, b,
// not c} satisfies every rule whose head it reaches.
inline constexpr const char* kEvenLoopConstraint =
    "a :- b.\n"
    "b :- not c.\n"
    "c :- not b.\n"
    "p :- a.\n"
    "q :- b.\n"
    ":- p, q.\n";

// No consistent answer sets: q defeats itself unless r holds, and nothing
// derives r. Both checks share one splitting set.
inline constexpr const char* kSelfDefeat =
    ":- p, q.\n"
    "q :- not r, not q.\n";

// ---- random programs --------------------------------------------------------

struct RandomProgramOptions {
  int max_atoms = 8;
  int max_rules = 12;
  int max_body = 3;
  double negation_density = 0.5;
  double constraint_rate = 0.15;  // chance a rule is headless
};

inline dccasp::Program random_program(std::mt19937& rng,
                                      const RandomProgramOptions& opt = {}) {
  dccasp::Program p;
  std::uniform_int_distribution<int> natoms_d(1, opt.max_atoms);
  const int natoms = natoms_d(rng);
  std::vector<dccasp::AtomId> ids;
  ids.reserve(natoms);
  for (int i = 0; i < natoms; ++i)
    ids.push_back(p.intern(std::string(1, static_cast<char>('a' + i))));

  std::uniform_int_distribution<int> nrules_d(1, opt.max_rules);
  std::uniform_int_distribution<int> atom_d(0, natoms - 1);
  std::uniform_int_distribution<int> body_d(0, opt.max_body);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int nrules = nrules_d(rng);
  for (int i = 0; i < nrules; ++i) {
    std::optional<dccasp::AtomId> head;
    if (unit(rng) >= opt.constraint_rate) head = ids[atom_d(rng)];
    std::vector<dccasp::Literal> body;
    std::set<dccasp::AtomId> used;
    const int blen = body_d(rng);
    for (int j = 0; j < blen; ++j) {
      dccasp::AtomId a = ids[atom_d(rng)];
      if (!used.insert(a).second) continue;
      body.push_back(unit(rng) < opt.negation_density ? dccasp::neg(a)
                                                      : dccasp::pos(a));
    }
    if (!head && body.empty()) continue;  // ":- ." would be unconditionally
                                          // violated and unparseable
    p.add_rule(head, std::move(body));
  }
  if (p.rules.empty()) p.add_rule(ids[0], {});
  return p;
}

// Same program with every atom renamed `prefix + name` (fresh table).
inline dccasp::Program prefix_atoms(const dccasp::Program& src,
                                    const std::string& prefix) {
  dccasp::Program out;
  std::vector<dccasp::AtomId> map;
  map.reserve(src.atoms.size());
  for (dccasp::AtomId a = 0; a < src.atoms.size(); ++a)
    map.push_back(out.intern(prefix + src.atom_name(a)));
  for (const dccasp::Rule& r : src.rules) {
    std::optional<dccasp::AtomId> head;
    if (r.head) head = map[*r.head];
    std::vector<dccasp::Literal> body;
    for (const dccasp::Literal& l : r.body)
      body.push_back(dccasp::Literal(map[l.atom], l.positive));
    out.add_rule(head, std::move(body));
  }
  return out;
}

// Concatenation sharing one atom table; callers keep components
// atom-disjoint via prefix_atoms.
inline dccasp::Program concat_programs(const dccasp::Program& a,
                                       const dccasp::Program& b) {
  dccasp::Program out;
  for (const dccasp::Program* src : {&a, &b}) {
    std::vector<dccasp::AtomId> map;
    for (dccasp::AtomId x = 0; x < src->atoms.size(); ++x)
      map.push_back(out.intern(src->atom_name(x)));
    for (const dccasp::Rule& r : src->rules) {
      std::optional<dccasp::AtomId> head;
      if (r.head) head = map[*r.head];
      std::vector<dccasp::Literal> body;
      for (const dccasp::Literal& l : r.body)
        body.push_back(dccasp::Literal(map[l.atom], l.positive));
      out.add_rule(head, std::move(body));
    }
  }
  return out;
}

// ---- independent path-parity search -----------------------------------------

// Breadth-first over (atom, visited mask, parity) states instead of the
// library's pruned DFS. A simple path ends the moment it reaches `to`, so
// arrivals are recorded and never extended; since `to` is never entered
// mid-path, cycles back to the start are still found.
inline std::pair<bool, bool> slow_path_parities(const dccasp::DependencyGraph& g,
                                                dccasp::AtomId from,
                                                dccasp::AtomId to) {
  bool even = false, odd = false;
  std::set<std::tuple<dccasp::AtomId, std::uint32_t, int>> seen;
  std::deque<std::tuple<dccasp::AtomId, std::uint32_t, int>> work;
  work.emplace_back(from, std::uint32_t{1} << from, 0);
  seen.insert(work.back());
  while (!work.empty()) {
    auto [at, mask, par] = work.front();
    work.pop_front();
    for (const auto& e : g.out[at]) {
      int np = (par + (e.positive ? 0 : 1)) % 2;
      if (e.to == to) {
        (np ? odd : even) = true;
        continue;
      }
      if (mask & (std::uint32_t{1} << e.to)) continue;
      auto state =
          std::make_tuple(e.to, mask | (std::uint32_t{1} << e.to), np);
      if (seen.insert(state).second) work.push_back(state);
    }
  }
  return {even, odd};
}

// ---- misc helpers -----------------------------------------------------------

inline std::vector<std::string> names_of(const dccasp::Program& p,
                                         const std::vector<dccasp::AtomId>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (dccasp::AtomId a : v) out.push_back(p.atom_name(a));
  return out;
}

inline bool subset_of(const std::vector<dccasp::AtomId>& sub,
                      const std::vector<dccasp::AtomId>& super) {
  std::set<dccasp::AtomId> s(super.begin(), super.end());
  for (dccasp::AtomId a : sub)
    if (!s.count(a)) return false;
  return true;
}

}  // namespace testsupport
