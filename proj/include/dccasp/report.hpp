#pragma once

// Analysis report for a compiled program: counts, the rules that need a
// consistency check, the generated check clauses, and the splitting
// partition that scopes them. Rendered as plain text or JSON.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dccasp/checks.hpp"
#include "dccasp/program.hpp"
#include "dccasp/splitting.hpp"

namespace dccasp {

namespace detail {

// Atom names of a set, sorted for stable output.
inline std::vector<std::string> sorted_set_names(const Program& p,
                                                 const std::vector<AtomId>& s) {
  std::vector<std::string> names;
  names.reserve(s.size());
  for (AtomId a : s) names.push_back(p.atom_name(a));
  std::sort(names.begin(), names.end());
  return names;
}

inline std::vector<AtomId> uncovered_atoms(const CheckProgram& cp,
                                           const SplittingPartition& part) {
  std::vector<AtomId> out;
  for (AtomId a = 0; a < cp.base_atom_count; ++a)
    if (part.atom_to_set[a] == SplittingPartition::kUncovered)
      out.push_back(a);
  return out;
}

}  // namespace detail

inline std::string render_analysis(const CheckProgram& cp,
                                   const SplittingPartition& part) {
  const Program& p = cp.program;
  std::string out;
  out += "atoms: " + std::to_string(cp.base_atom_count) + "\n";
  out += "rules: " + std::to_string(p.rules.size()) + "\n";
  out += "rules needing checks: " + std::to_string(cp.subchecks.size()) + "\n";
  for (const SubCheck& sc : cp.subchecks)
    out += "  [" + std::to_string(sc.source_rule) + "] " +
           to_string(p, p.rules[sc.source_rule]) + "\n";
  out += "checks:\n";
  out += render_checks(cp);
  out += "splitting sets: " + std::to_string(part.set_count()) + "\n";
  for (std::size_t sid = 0; sid < part.set_count(); ++sid) {
    out += "  set " + std::to_string(sid) + " { ";
    std::vector<std::string> names = detail::sorted_set_names(p, part.sets[sid]);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ", ";
      out += names[i];
    }
    out += " } checks:";
    for (std::uint32_t ci : part.set_checks[sid])
      out += " " + p.atom_name(cp.subchecks[ci].check_atom);
    out += "\n";
  }
  std::vector<AtomId> loose = detail::uncovered_atoms(cp, part);
  if (!loose.empty()) {
    out += "atoms outside every set: { ";
    std::vector<std::string> names = detail::sorted_set_names(p, loose);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ", ";
      out += names[i];
    }
    out += " }\n";
  }
  return out;
}

inline nlohmann::json analysis_to_json(const CheckProgram& cp,
                                       const SplittingPartition& part) {
  const Program& p = cp.program;
  nlohmann::json out;
  out["atoms"] = cp.base_atom_count;
  out["rules"] = p.rules.size();

  nlohmann::json olon = nlohmann::json::array();
  for (const SubCheck& sc : cp.subchecks)
    olon.push_back({{"rule", sc.source_rule},
                    {"text", to_string(p, p.rules[sc.source_rule])}});
  out["rules_needing_checks"] = std::move(olon);

  nlohmann::json checks = nlohmann::json::array();
  for (const SubCheck& sc : cp.subchecks) {
    nlohmann::json clauses = nlohmann::json::array();
    for (const Literal& l : sc.clauses) clauses.push_back(to_string(p, l));
    checks.push_back({{"name", p.atom_name(sc.check_atom)},
                      {"rule", sc.source_rule},
                      {"clauses", std::move(clauses)}});
  }
  out["checks"] = std::move(checks);

  nlohmann::json nmr = nlohmann::json::array();
  for (const SubCheck& sc : cp.subchecks)
    nmr.push_back(p.atom_name(sc.check_atom));
  out["nmr_check"] = std::move(nmr);

  nlohmann::json sets = nlohmann::json::array();
  for (std::size_t sid = 0; sid < part.set_count(); ++sid) {
    nlohmann::json names = nlohmann::json::array();
    for (const std::string& n : detail::sorted_set_names(p, part.sets[sid]))
      names.push_back(n);
    nlohmann::json cks = nlohmann::json::array();
    for (std::uint32_t ci : part.set_checks[sid])
      cks.push_back(p.atom_name(cp.subchecks[ci].check_atom));
    sets.push_back({{"atoms", std::move(names)}, {"checks", std::move(cks)}});
  }
  out["splitting_sets"] = std::move(sets);

  nlohmann::json loose = nlohmann::json::array();
  for (const std::string& n :
       detail::sorted_set_names(p, detail::uncovered_atoms(cp, part)))
    loose.push_back(n);
  out["atoms_outside_sets"] = std::move(loose);
  return out;
}

}  // namespace dccasp
