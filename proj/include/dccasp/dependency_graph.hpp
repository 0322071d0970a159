// Atom-level dependency graph and signed reachability.
//
// A rule `h :- b1, ..., bn.` contributes one edge from h to each body atom,
// labeled with the body literal's sign. Integrity constraints contribute no
// edges. Parallel (from, to, sign) duplicates are collapsed.
//
// ParityReachability answers "is there a simple call path from a to b
// crossing an even/odd number of negative edges". Paths are simple (no atom
// revisited); reach(a, a, even) holds for every atom via the empty path,
// while reach(a, a, odd) requires an actual odd cycle. Simple paths, rather
// than arbitrary walks, are what odd-loop detection needs: a walk that
// revisits an atom can fake a parity no real loop has.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dccasp/program.hpp"

namespace dccasp {

struct DependencyGraph {
  struct Edge {
    AtomId to = 0;
    bool positive = true;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  std::size_t atom_count = 0;
  std::vector<std::vector<Edge>> out;  // indexed by from-atom, sorted, unique

  bool has_edge(AtomId from, AtomId to, bool positive) const {
    const auto& es = out[from];
    return std::binary_search(es.begin(), es.end(), Edge{to, positive});
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& es : out) n += es.size();
    return n;
  }
};

inline DependencyGraph build_dependency_graph(const Program& p) {
  DependencyGraph g;
  g.atom_count = p.atoms.size();
  g.out.resize(g.atom_count);
  for (const Rule& r : p.rules) {
    if (!r.head) continue;
    for (const Literal& l : r.body)
      g.out[*r.head].push_back({l.atom, l.positive});
  }
  for (auto& es : g.out) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }
  return g;
}

class ParityReachability {
 public:
  explicit ParityReachability(const DependencyGraph& g) : g_(g) {}

  // True iff a simple path from `from` to `to` crosses an odd (when
  // odd=true) or even (when odd=false) number of negative edges. The empty
  // path makes reach(a, a, even) hold unconditionally.
  bool reach(AtomId from, AtomId to, bool odd) const {
    if (from == to && !odd) return true;
    auto [even_found, odd_found] = parities(from, to);
    return odd ? odd_found : even_found;
  }

 private:
  // Both parities for (from, to) in one search, memoized.
  std::pair<bool, bool> parities(AtomId from, AtomId to) const {
    auto key = std::make_pair(from, to);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const std::vector<bool>& prune = reaches_target(to);
    std::vector<bool> on_path(g_.atom_count, false);
    bool even_found = false, odd_found = false;
    dfs(from, to, false, prune, on_path, even_found, odd_found);
    auto result = std::make_pair(even_found, odd_found);
    cache_.emplace(key, result);
    return result;
  }

  void dfs(AtomId at, AtomId to, bool odd_so_far,
           const std::vector<bool>& prune, std::vector<bool>& on_path,
           bool& even_found, bool& odd_found) const {
    if (even_found && odd_found) return;
    on_path[at] = true;
    for (const auto& e : g_.out[at]) {
      bool parity = odd_so_far != !e.positive;
      if (e.to == to) {
        (parity ? odd_found : even_found) = true;
        if (even_found && odd_found) break;
        continue;
      }
      if (on_path[e.to] || !prune[e.to]) continue;
      dfs(e.to, to, parity, prune, on_path, even_found, odd_found);
      if (even_found && odd_found) break;
    }
    on_path[at] = false;
  }

  // Atoms from which `to` is reachable, ignoring signs (search pruning).
  const std::vector<bool>& reaches_target(AtomId to) const {
    auto it = back_reach_.find(to);
    if (it != back_reach_.end()) return it->second;
    if (rev_.empty()) {
      rev_.resize(g_.atom_count);
      for (AtomId from = 0; from < g_.atom_count; ++from)
        for (const auto& e : g_.out[from]) rev_[e.to].push_back(from);
    }
    std::vector<bool> seen(g_.atom_count, false);
    std::vector<AtomId> stack{to};
    seen[to] = true;
    while (!stack.empty()) {
      AtomId a = stack.back();
      stack.pop_back();
      for (AtomId from : rev_[a])
        if (!seen[from]) {
          seen[from] = true;
          stack.push_back(from);
        }
    }
    return back_reach_.emplace(to, std::move(seen)).first->second;
  }

  const DependencyGraph& g_;
  mutable std::map<std::pair<AtomId, AtomId>, std::pair<bool, bool>> cache_;
  mutable std::map<AtomId, std::vector<bool>> back_reach_;
  mutable std::vector<std::vector<AtomId>> rev_;
};

inline ParityReachability parity_reachability(const DependencyGraph& g) {
  return ParityReachability(g);
}

}  // namespace dccasp
