#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "matcha/seq.hpp"
#include "matcha/syntax.hpp"
#include "matcha/value.hpp"

namespace matcha::engine {

// One pending obligation: match `target` against `pattern` under `matcher`.
// Targets stay unforced until a matcher decides to look at them.
struct MatchingAtom {
  PatternPtr pattern;
  Value matcher;
  DeferredPtr target;
};

// Persistent stack of atoms, shared between the states it spawned.
class AtomStack {
 public:
  AtomStack() = default;

  bool empty() const { return node_ == nullptr; }
  std::size_t size() const { return node_ ? node_->size : 0; }
  const MatchingAtom& top() const { return node_->atom; }
  AtomStack pop() const { return AtomStack(node_->next); }
  AtomStack push(MatchingAtom atom) const;

  // Top to bottom.
  std::vector<const MatchingAtom*> items() const;

 private:
  struct Node {
    MatchingAtom atom;
    std::shared_ptr<const Node> next;
    std::size_t size;
  };
  explicit AtomStack(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct MatchingState {
  AtomStack atoms;
  EnvPtr env;  // the match-all environment plus bindings made so far
};

using StateSeq = Seq<MatchingState>;

// Matches an atom in a state: runs the matcher's applicable clause and turns
// each candidate into a successor state. The stream is lazy; an infinite
// candidate collection only materializes as far as it is consumed.
StateSeq match_function(const MatchingAtom& atom, const AtomStack& rest, const EnvPtr& env);

// Breadth-first enumeration over a forest of lazy state streams. Each round
// replaces every stream by the successors of its first state followed by its
// remainder, so siblings produced early and branches discovered late are
// visited fairly.
class Machine {
 public:
  Machine(PatternPtr pattern, Value matcher, DeferredPtr target, EnvPtr env);

  std::optional<EnvPtr> next_result();

  // One full round; results found along the way queue up for next_result.
  // Returns false once the frontier is exhausted.
  bool step_round();

  const std::deque<StateSeq>& frontier() const { return frontier_; }
  const EnvPtr& base_env() const { return base_; }

 private:
  std::deque<StateSeq> frontier_;
  std::deque<EnvPtr> pending_;
  EnvPtr base_;
};

// All results of (match-all target matcher [pattern _]) as a lazy stream of
// extended environments.
Seq<EnvPtr> enumerate(PatternPtr pattern, Value matcher, DeferredPtr target, EnvPtr env);

// First result, if any: the match form's clause test.
std::optional<EnvPtr> first_match(PatternPtr pattern, Value matcher, DeferredPtr target,
                                  EnvPtr env);

// Renders a machine state for traces: MState {[pat matcher target] ...} env {[x v] ...}.
// Bound collections print at most 32 items.
std::string show_state(const MatchingState& st, const Env* base);

// Runs the machine on a query, writing the frontier after each round, rounds
// separated by a dashed line. Round 0 is the initial state alone. Walking a
// frontier prints every state in it, so tracing a query with infinitely many
// candidates per step may not return.
void trace(PatternPtr pattern, Value matcher, DeferredPtr target, EnvPtr env, int rounds,
           std::ostream& out);

}  // namespace matcha::engine
