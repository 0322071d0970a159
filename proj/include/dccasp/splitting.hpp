// Splitting-set partition over the check-reachable part of a program.
//
// Each SubCheck seeds a depth-first collection from the atoms of its
// clauses, closed under "if an atom is in, the body atoms of every rule
// defining it are in". Collections that touch a common atom merge
// (union-find), so the result is a partition of the check-reachable atoms;
// atoms no check can reach stay uncovered. A literal's relevant checks are
// exactly the checks owned by the set containing its atom.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "dccasp/checks.hpp"
#include "dccasp/program.hpp"

namespace dccasp {

struct SplittingPartition {
  static constexpr std::uint32_t kUncovered =
      std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> atom_to_set;  // per base atom; kUncovered if none
  std::vector<std::vector<AtomId>> sets;   // atoms per set, ascending
  std::vector<std::vector<std::uint32_t>> set_checks;  // subcheck indices
  std::vector<std::uint32_t> check_to_set;             // per subcheck

  std::size_t set_count() const { return sets.size(); }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

inline SplittingPartition build_splitting_partition(const CheckProgram& cp) {
  const std::size_t n = cp.base_atom_count;
  SplittingPartition part;
  part.atom_to_set.assign(n, SplittingPartition::kUncovered);

  detail::UnionFind uf(n);
  std::vector<bool> covered(n, false);

  std::vector<AtomId> roots;  // one collected atom per check, for lookup
  for (const SubCheck& sc : cp.subchecks) {
    std::vector<AtomId> stack;
    for (const Literal& l : sc.clauses)
      if (l.atom < n) stack.push_back(l.atom);
    AtomId rep = stack.front();
    std::vector<bool> seen(n, false);
    while (!stack.empty()) {
      AtomId a = stack.back();
      stack.pop_back();
      if (seen[a]) continue;
      seen[a] = true;
      covered[a] = true;
      uf.unite(rep, a);  // merges with any earlier check's set on overlap
      for (std::uint32_t rid : cp.rules_for_atom[a])
        for (const Literal& l : cp.program.rules[rid].body)
          if (!seen[l.atom]) stack.push_back(l.atom);
    }
    roots.push_back(rep);
  }

  // Compress union-find roots into dense set ids, numbered by the first
  // check that owns them (processing-order independent membership).
  std::vector<std::uint32_t> root_to_set(n, SplittingPartition::kUncovered);
  part.check_to_set.resize(cp.subchecks.size());
  for (std::size_t ci = 0; ci < cp.subchecks.size(); ++ci) {
    std::uint32_t root = uf.find(roots[ci]);
    if (root_to_set[root] == SplittingPartition::kUncovered) {
      root_to_set[root] = static_cast<std::uint32_t>(part.sets.size());
      part.sets.emplace_back();
      part.set_checks.emplace_back();
    }
    std::uint32_t sid = root_to_set[root];
    part.check_to_set[ci] = sid;
    part.set_checks[sid].push_back(static_cast<std::uint32_t>(ci));
  }
  for (AtomId a = 0; a < n; ++a) {
    if (!covered[a]) continue;
    std::uint32_t sid = root_to_set[uf.find(a)];
    part.atom_to_set[a] = sid;
    part.sets[sid].push_back(a);
  }
  return part;
}

// Checks relevant to a literal: those owned by the splitting set containing
// its atom; empty for uncovered atoms.
inline const std::vector<std::uint32_t>& dcc_relevant_checks(
    const SplittingPartition& part, const Literal& l) {
  static const std::vector<std::uint32_t> kNone;
  if (l.atom >= part.atom_to_set.size()) return kNone;
  std::uint32_t sid = part.atom_to_set[l.atom];
  if (sid == SplittingPartition::kUncovered) return kNone;
  return part.set_checks[sid];
}

}  // namespace dccasp
