// Core types for grounded normal logic programs: atoms, literals, rules,
// programs and queries. Atoms are interned strings; everything downstream
// works with dense AtomId indices.
#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dccasp {

using AtomId = std::uint32_t;

// Interning table. Ids are assigned in first-seen order and never reused.
class AtomTable {
 public:
  AtomId intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    AtomId id = static_cast<AtomId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::optional<AtomId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(AtomId id) const {
    assert(id < names_.size());
    return names_[id];
  }

  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> index_;
};

struct Literal {
  AtomId atom = 0;
  bool positive = true;

  Literal() = default;
  Literal(AtomId a, bool pos) : atom(a), positive(pos) {}

  Literal complement() const { return Literal(atom, !positive); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    // positive literals sort before their negation
    return (a.positive ? 0 : 1) <=> (b.positive ? 0 : 1);
  }
};

inline Literal pos(AtomId a) { return Literal(a, true); }
inline Literal neg(AtomId a) { return Literal(a, false); }

// A rule `h :- b1, ..., bn.`; facts have an empty body, integrity
// constraints have no head.
struct Rule {
  std::optional<AtomId> head;
  std::vector<Literal> body;

  bool is_constraint() const { return !head.has_value(); }
  bool is_fact() const { return head.has_value() && body.empty(); }

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Program {
  AtomTable atoms;
  std::vector<Rule> rules;

  AtomId intern(std::string_view name) { return atoms.intern(name); }
  std::optional<AtomId> find(std::string_view name) const {
    return atoms.find(name);
  }
  const std::string& atom_name(AtomId id) const { return atoms.name(id); }

  void add_rule(std::optional<AtomId> head, std::vector<Literal> body) {
    rules.push_back(Rule{head, std::move(body)});
  }
};

// A query is a non-empty conjunction of literals.
struct Query {
  std::vector<Literal> goals;
};

// ---- rendering -------------------------------------------------------------

inline std::string to_string(const Program& p, const Literal& l) {
  if (l.positive) return p.atom_name(l.atom);
  return "not " + p.atom_name(l.atom);
}

inline std::string to_string(const Program& p, const Rule& r) {
  std::string out;
  if (r.head) out += p.atom_name(*r.head);
  if (!r.body.empty() || !r.head) {
    if (r.head) out += " ";
    out += ":- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(p, r.body[i]);
    }
  }
  out += ".";
  return out;
}

inline std::string to_string(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules) {
    out += to_string(p, r);
    out += "\n";
  }
  return out;
}

inline std::string to_string(const Program& p, const Query& q) {
  std::string out = "?- ";
  for (std::size_t i = 0; i < q.goals.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p, q.goals[i]);
  }
  out += ".";
  return out;
}

}  // namespace dccasp
