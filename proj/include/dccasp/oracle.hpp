// Brute-force reference semantics: reduct, least model, stability test,
// exhaustive answer-set enumeration, and the splitting-set decomposition.
// Everything here is deliberately simple; it is the ground truth the
// goal-directed engine is validated against.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dccasp/program.hpp"

namespace dccasp {

struct OracleLimitError : std::runtime_error {
  explicit OracleLimitError(const std::string& msg)
      : std::runtime_error(msg) {}
};

namespace detail {

inline bool contains(const std::vector<AtomId>& sorted, AtomId a) {
  return std::binary_search(sorted.begin(), sorted.end(), a);
}

}  // namespace detail

// Reduct w.r.t. candidate set x (sorted): drops every rule with a negative
// body literal whose atom is in x, strips negative literals from the rest.
inline Program gl_reduct(const Program& p, const std::vector<AtomId>& x) {
  Program out;
  out.atoms = p.atoms;
  for (const Rule& r : p.rules) {
    bool blocked = false;
    std::vector<Literal> body;
    for (const Literal& l : r.body) {
      if (l.positive) {
        body.push_back(l);
      } else if (detail::contains(x, l.atom)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.add_rule(r.head, std::move(body));
  }
  return out;
}

// Least model of a positive program, or nullopt when a constraint fires.
inline std::optional<std::vector<AtomId>> least_model(const Program& p) {
  std::vector<bool> in(p.atoms.size(), false);
  for (const Rule& r : p.rules)
    for (const Literal& l : r.body)
      if (!l.positive)
        throw std::invalid_argument("least_model requires a positive program");
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : p.rules) {
      if (!r.head || in[*r.head]) continue;
      bool fire = true;
      for (const Literal& l : r.body) fire = fire && in[l.atom];
      if (fire) {
        in[*r.head] = true;
        changed = true;
      }
    }
  }
  for (const Rule& r : p.rules) {
    if (r.head) continue;
    bool fire = true;
    for (const Literal& l : r.body) fire = fire && in[l.atom];
    if (fire) return std::nullopt;  // inconsistent
  }
  std::vector<AtomId> model;
  for (AtomId a = 0; a < in.size(); ++a)
    if (in[a]) model.push_back(a);
  return model;
}

inline bool is_stable(const Program& p, std::vector<AtomId> x) {
  std::sort(x.begin(), x.end());
  auto lm = least_model(gl_reduct(p, x));
  return lm && *lm == x;
}

// All answer sets, ordered by cardinality and then lexicographically by the
// sorted atom-id sequence. Throws OracleLimitError above atom_limit.
inline std::vector<std::vector<AtomId>> enumerate_answer_sets(
    const Program& p, std::size_t atom_limit = 24) {
  const std::size_t n = p.atoms.size();
  if (n > atom_limit)
    throw OracleLimitError("program has " + std::to_string(n) +
                           " atoms, enumeration limit is " +
                           std::to_string(atom_limit));

  struct MaskRule {
    std::uint32_t head = 0;  // bit, 0 for constraints
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    bool constraint = false;
  };
  std::vector<MaskRule> rules;
  rules.reserve(p.rules.size());
  for (const Rule& r : p.rules) {
    MaskRule mr;
    mr.constraint = !r.head;
    if (r.head) mr.head = 1u << *r.head;
    for (const Literal& l : r.body)
      (l.positive ? mr.pos : mr.neg) |= 1u << l.atom;
    rules.push_back(mr);
  }

  auto stable = [&](std::uint32_t x) {
    std::uint32_t m = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const MaskRule& r : rules) {
        if (r.constraint || (r.neg & x) || (m & r.head)) continue;
        if ((r.pos & m) == r.pos) {
          m |= r.head;
          changed = true;
        }
      }
    }
    for (const MaskRule& r : rules)
      if (r.constraint && !(r.neg & x) && (r.pos & m) == r.pos) return false;
    return m == x;
  };

  std::vector<std::vector<AtomId>> result;
  // cardinality-major, lexicographic within each cardinality
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<AtomId> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<AtomId>(i);
    while (true) {
      std::uint32_t mask = 0;
      for (AtomId a : idx) mask |= 1u << a;
      if (stable(mask)) result.push_back(idx);
      if (k == 0) break;
      // next k-combination of 0..n-1 in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return result;
}

// ---- splitting -------------------------------------------------------------

struct SplitResult {
  Program bottom;
  Program top;
};

// u must be closed: the body atoms of every rule whose head is in u belong
// to u. Headless rules go to the bottom iff all their body atoms are in u.
// Both halves share the full atom table (ids stay comparable).
inline SplitResult split(const Program& p, const std::vector<AtomId>& u) {
  std::vector<AtomId> su = u;
  std::sort(su.begin(), su.end());
  for (const Rule& r : p.rules) {
    if (!r.head || !detail::contains(su, *r.head)) continue;
    for (const Literal& l : r.body)
      if (!detail::contains(su, l.atom))
        throw std::invalid_argument(
            "splitting set is not closed: rule for '" +
            p.atom_name(*r.head) + "' calls '" + p.atom_name(l.atom) + "'");
  }
  SplitResult out;
  out.bottom.atoms = p.atoms;
  out.top.atoms = p.atoms;
  for (const Rule& r : p.rules) {
    bool in_bottom;
    if (r.head) {
      in_bottom = detail::contains(su, *r.head);
    } else {
      in_bottom = true;
      for (const Literal& l : r.body)
        in_bottom = in_bottom && detail::contains(su, l.atom);
    }
    (in_bottom ? out.bottom : out.top).rules.push_back(r);
  }
  return out;
}

// Partial evaluation of the top half against x, an answer set over u:
// drops rules whose body contains a u-literal falsified by x, strips the
// satisfied u-literals from the rest.
inline Program partial_eval_top(const Program& top,
                                const std::vector<AtomId>& u,
                                const std::vector<AtomId>& x) {
  std::vector<AtomId> su = u, sx = x;
  std::sort(su.begin(), su.end());
  std::sort(sx.begin(), sx.end());
  for (AtomId a : sx)
    if (!detail::contains(su, a))
      throw std::invalid_argument("x must be a subset of u");
  Program out;
  out.atoms = top.atoms;
  for (const Rule& r : top.rules) {
    if (r.head && detail::contains(su, *r.head))
      throw std::invalid_argument("top rule has its head in u");
    bool dropped = false;
    std::vector<Literal> body;
    for (const Literal& l : r.body) {
      if (!detail::contains(su, l.atom)) {
        body.push_back(l);
        continue;
      }
      bool holds = detail::contains(sx, l.atom) == l.positive;
      if (!holds) {
        dropped = true;
        break;
      }
    }
    if (!dropped) out.add_rule(r.head, std::move(body));
  }
  return out;
}

inline std::string render_atom_set(const Program& p,
                                   const std::vector<AtomId>& atoms) {
  std::vector<std::string> names;
  names.reserve(atoms.size());
  for (AtomId a : atoms) names.push_back(p.atom_name(a));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += i ? ", " : " ";
    out += names[i];
  }
  out += " }";
  return out;
}

}  // namespace dccasp
