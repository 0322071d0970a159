// Goal-directed solver with coinductive hypothesis set and dynamic
// consistency checking.
//
// Literals resolve top-down: positive goals against the program's rules in
// source order, negative goals against compiled duals. Every call is first
// looked up in the CHS:
//   * same literal, completed  -> succeed without re-proving
//   * same literal, ancestor   -> coinductive test on the negation depth
//     difference d: positive literals succeed iff d is even and non-zero,
//     negative literals succeed iff d is even (d = 0 included)
//   * complement present       -> fail
// The negation depth of a subgoal increases by one exactly when its sign
// differs from its parent goal's sign, so each polarity boundary on the
// call stack counts once.
//
// Consistency checks: in full mode every SubCheck runs after the query, in
// source order. In dcc mode a SubCheck is enqueued (FIFO) when a literal of
// its splitting set enters the CHS, and the queue is drained to a fixpoint
// after the query goals succeed; literals proved by checks can activate
// further checks. All state changes (CHS insertions, completions, queue
// operations, checks-done marks) go through a single trail, so
// chronological backtracking is exact: a check satisfied on one branch runs
// again after backtracking past its proof.
//
// Event hook vocabulary (in order of emission): call, succeed, fail (one
// call and one final succeed-or-fail per goal occurrence), activate_check
// (dcc enqueue), check_begin (a SubCheck proof starts). Counters:
// resolution_steps counts call events and is what step_limit bounds;
// subcheck_invocations counts check_begin events.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <vector>

#include "dccasp/checks.hpp"
#include "dccasp/program.hpp"
#include "dccasp/splitting.hpp"

namespace dccasp {

enum class SolveMode { dcc, full };

struct SolveConfig {
  SolveMode mode = SolveMode::dcc;
  std::size_t max_answers = 1;
  std::uint64_t step_limit = 0;  // 0 = unbounded
};

struct SolveEvent {
  enum class Kind { call, succeed, fail, activate_check, check_begin };
  Kind kind;
  Literal literal{};        // call / succeed / fail
  std::uint32_t check = 0;  // activate_check / check_begin: subcheck index
  std::uint32_t depth = 0;  // negation depth of the goal, for call
};

using EventHook = std::function<void(const SolveEvent&)>;

struct SolveStats {
  std::uint64_t resolution_steps = 0;
  std::uint64_t subcheck_invocations = 0;
  std::uint64_t check_activations = 0;
  std::size_t splitting_sets_touched = 0;  // distinct sets of invoked checks
};

// One successful derivation. positives/negatives cover user atoms only;
// raw_chs additionally keeps generated check atoms, in insertion order.
struct PartialAnswerSet {
  std::vector<AtomId> positives;
  std::vector<AtomId> negatives;
  std::vector<Literal> raw_chs;

  friend bool operator==(const PartialAnswerSet& a,
                         const PartialAnswerSet& b) {
    return a.positives == b.positives && a.negatives == b.negatives;
  }
};

struct SolveOutcome {
  std::vector<PartialAnswerSet> answers;
  bool step_limit_exceeded = false;
  SolveStats stats;

  bool success() const { return !answers.empty(); }
};

class Solver {
 public:
  Solver(const CheckProgram& cp, const SplittingPartition& part,
         SolveConfig cfg = {}, EventHook hook = {})
      : cp_(cp), part_(part), cfg_(cfg), hook_(std::move(hook)) {}

  SolveOutcome solve(const Query& q) {
    reset();
    if (cfg_.mode == SolveMode::full) {
      for (std::uint32_t ci = 0; ci < cp_.subchecks.size(); ++ci) {
        queue_.push_back(ci);
        queued_[ci] = true;
      }
    }
    SolveOutcome out;
    auto drain = [&]() -> bool { return drain_checks(); };
    try {
      prove_body(q.goals, 0, 0, true, make_cont(drain));
    } catch (const StepLimit&) {
      out.step_limit_exceeded = true;
    }
    stats_.splitting_sets_touched = touched_sets_.size();
    out.answers = std::move(answers_);
    out.stats = stats_;
    return out;
  }

 private:
  struct StepLimit {};

  enum class Status : std::uint8_t { absent, ancestor, completed };

  struct ChsSlot {
    Status status = Status::absent;
    bool positive = true;
    std::uint32_t depth = 0;
  };

  enum class TrailKind : std::uint8_t {
    chs_insert,     // index = atom: remove from CHS
    chs_complete,   // index = atom: back to ancestor
    queue_push,     // pop check queue tail
    queue_advance,  // step the queue head back
    done_unset      // index = check: clear done flag
  };

  struct TrailEntry {
    TrailKind kind;
    std::uint32_t index;
  };

  struct Cont {
    void* ctx;
    bool (*fn)(void*);
    bool operator()() const { return fn(ctx); }
  };

  template <class F>
  static Cont make_cont(F& f) {
    return Cont{&f, [](void* ctx) { return (*static_cast<F*>(ctx))(); }};
  }

  void reset() {
    chs_.assign(cp_.program.atoms.size(), ChsSlot{});
    chs_order_.clear();
    trail_.clear();
    queue_.clear();
    queue_head_ = 0;
    queued_.assign(cp_.subchecks.size(), false);
    done_.assign(cp_.subchecks.size(), false);
    answers_.clear();
    touched_sets_.clear();
    stats_ = SolveStats{};
  }

  void emit(SolveEvent::Kind kind, Literal l, std::uint32_t depth = 0) const {
    if (hook_) hook_(SolveEvent{kind, l, 0, depth});
  }
  void emit_check(SolveEvent::Kind kind, std::uint32_t check) const {
    if (hook_) hook_(SolveEvent{kind, Literal{}, check, 0});
  }

  void chs_insert(Literal l, Status st, std::uint32_t depth) {
    ChsSlot& slot = chs_[l.atom];
    assert(slot.status == Status::absent);
    slot = ChsSlot{st, l.positive, depth};
    chs_order_.push_back(l);
    trail_.push_back({TrailKind::chs_insert, l.atom});
  }

  void complete(AtomId atom) {
    assert(chs_[atom].status == Status::ancestor);
    chs_[atom].status = Status::completed;
    trail_.push_back({TrailKind::chs_complete, atom});
  }

  void unwind(std::size_t mark) {
    while (trail_.size() > mark) {
      TrailEntry e = trail_.back();
      trail_.pop_back();
      switch (e.kind) {
        case TrailKind::chs_insert:
          chs_[e.index].status = Status::absent;
          chs_order_.pop_back();
          break;
        case TrailKind::chs_complete:
          chs_[e.index].status = Status::ancestor;
          break;
        case TrailKind::queue_push:
          queued_[queue_.back()] = false;
          queue_.pop_back();
          break;
        case TrailKind::queue_advance:
          --queue_head_;
          break;
        case TrailKind::done_unset:
          done_[e.index] = false;
          break;
      }
    }
  }

  void activate_checks(Literal l) {
    if (l.atom >= part_.atom_to_set.size()) return;
    std::uint32_t sid = part_.atom_to_set[l.atom];
    if (sid == SplittingPartition::kUncovered) return;
    for (std::uint32_t ci : part_.set_checks[sid]) {
      if (queued_[ci] || done_[ci]) continue;
      queue_.push_back(ci);
      queued_[ci] = true;
      trail_.push_back({TrailKind::queue_push, ci});
      ++stats_.check_activations;
      emit_check(SolveEvent::Kind::activate_check, ci);
    }
  }

  bool solve_goal(Literal l, std::uint32_t depth, Cont k) {
    if (cfg_.step_limit && stats_.resolution_steps >= cfg_.step_limit)
      throw StepLimit{};
    ++stats_.resolution_steps;
    emit(SolveEvent::Kind::call, l, depth);

    const ChsSlot& slot = chs_[l.atom];
    if (slot.status != Status::absent) {
      if (slot.positive != l.positive) {  // complement in CHS
        emit(SolveEvent::Kind::fail, l);
        return false;
      }
      bool ok;
      if (slot.status == Status::completed) {
        ok = true;
      } else {
        // recursive call on an ancestor: coinductive test
        std::uint32_t d = depth - slot.depth;
        ok = d % 2 == 0 && (d > 0 || !l.positive);
      }
      if (ok) {
        emit(SolveEvent::Kind::succeed, l);
        if (k()) return true;
      }
      emit(SolveEvent::Kind::fail, l);
      return false;
    }

    std::size_t mark = trail_.size();
    chs_insert(l, Status::ancestor, depth);
    if (cfg_.mode == SolveMode::dcc) activate_checks(l);

    auto complete_k = [&]() -> bool {
      complete(l.atom);
      emit(SolveEvent::Kind::succeed, l);
      return k();
    };
    Cont ck = make_cont(complete_k);

    // atoms interned after compilation (query-only atoms) have no rules:
    // the positive goal fails, the negative one holds unconditionally
    if (l.positive) {
      if (l.atom < cp_.rules_for_atom.size()) {
        for (std::uint32_t rid : cp_.rules_for_atom[l.atom]) {
          std::size_t m = trail_.size();
          if (prove_body(cp_.program.rules[rid].body, 0, depth, true, ck))
            return true;
          unwind(m);
        }
      }
    } else {
      if (l.atom >= cp_.duals.size()) {
        if (ck()) return true;
      } else if (prove_dual(l.atom, 0, depth, ck)) {
        return true;
      }
    }
    unwind(mark);
    emit(SolveEvent::Kind::fail, l);
    return false;
  }

  bool prove_body(std::span<const Literal> body, std::size_t idx,
                  std::uint32_t owner_depth, bool owner_positive, Cont k) {
    if (idx == body.size()) return k();
    Literal sub = body[idx];
    std::uint32_t d = owner_depth + (sub.positive != owner_positive ? 1 : 0);
    auto next = [&]() -> bool {
      return prove_body(body, idx + 1, owner_depth, owner_positive, k);
    };
    return solve_goal(sub, d, make_cont(next));
  }

  // Conjunction over the rule groups of atom a's dual; within a group the
  // complement literals are alternatives, tried in body order.
  bool prove_dual(AtomId a, std::size_t group, std::uint32_t depth, Cont k) {
    const auto& groups = cp_.duals[a];
    if (group == groups.size()) return k();
    auto next = [&]() -> bool { return prove_dual(a, group + 1, depth, k); };
    Cont nk = make_cont(next);
    for (const Literal& c : groups[group]) {
      std::size_t m = trail_.size();
      std::uint32_t d = depth + (c.positive ? 1 : 0);  // owner is negative
      if (solve_goal(c, d, nk)) return true;
      unwind(m);
    }
    return false;
  }

  bool drain_checks() {
    if (queue_head_ == queue_.size()) return report_answer();
    std::uint32_t ci = queue_[queue_head_];
    std::size_t mark = trail_.size();
    ++queue_head_;
    trail_.push_back({TrailKind::queue_advance, 0});
    done_[ci] = true;
    trail_.push_back({TrailKind::done_unset, ci});
    ++stats_.subcheck_invocations;
    touched_sets_.insert(part_.check_to_set[ci]);
    emit_check(SolveEvent::Kind::check_begin, ci);

    const SubCheck& sc = cp_.subchecks[ci];
    auto next = [&]() -> bool {
      chs_insert(pos(sc.check_atom), Status::completed, 0);
      return drain_checks();
    };
    Cont nk = make_cont(next);
    for (const Literal& c : sc.clauses) {
      std::size_t m = trail_.size();
      if (solve_goal(c, c.positive ? 0 : 1, nk)) return true;
      unwind(m);
    }
    unwind(mark);
    return false;
  }

  // Reached when the query and all pending checks hold. Returning false
  // forces backtracking into the next derivation.
  bool report_answer() {
    PartialAnswerSet ans;
    ans.raw_chs = chs_order_;
    for (const Literal& l : chs_order_) {
      if (l.atom >= cp_.base_atom_count) continue;
      (l.positive ? ans.positives : ans.negatives).push_back(l.atom);
    }
    std::sort(ans.positives.begin(), ans.positives.end());
    std::sort(ans.negatives.begin(), ans.negatives.end());
    answers_.push_back(std::move(ans));
    return answers_.size() >= cfg_.max_answers;
  }

  const CheckProgram& cp_;
  const SplittingPartition& part_;
  SolveConfig cfg_;
  EventHook hook_;

  std::vector<ChsSlot> chs_;
  std::vector<Literal> chs_order_;
  std::vector<TrailEntry> trail_;
  std::vector<std::uint32_t> queue_;
  std::size_t queue_head_ = 0;
  std::vector<bool> queued_;
  std::vector<bool> done_;
  std::vector<PartialAnswerSet> answers_;
  std::set<std::uint32_t> touched_sets_;
  SolveStats stats_;
};

inline SolveOutcome solve(const CheckProgram& cp,
                          const SplittingPartition& part, const Query& q,
                          SolveConfig cfg = {}, EventHook hook = {}) {
  return Solver(cp, part, cfg, std::move(hook)).solve(q);
}

}  // namespace dccasp
