#include "matcha/engine.hpp"

#include <algorithm>

#include "matcha/error.hpp"
#include "matcha/evaluator.hpp"
#include "matcha/stats.hpp"

namespace matcha::engine {

// ---- atom stacks ---------------------------------------------------------------

AtomStack AtomStack::push(MatchingAtom atom) const {
  auto n = std::make_shared<Node>(Node{std::move(atom), node_, size() + 1});
  if (n->size > stats::max_atom_stack) stats::max_atom_stack = n->size;
  return AtomStack(std::move(n));
}

std::vector<const MatchingAtom*> AtomStack::items() const {
  std::vector<const MatchingAtom*> out;
  for (const Node* n = node_.get(); n; n = n->next.get()) out.push_back(&n->atom);
  return out;
}

// ---- primitive pattern matching --------------------------------------------------

namespace {

struct PpMatch {
  std::vector<PatternPtr> holes;
  std::vector<Binding> bindings;
};

// Matches a matcher clause's pattern against the atom's pattern. Holes
// swallow whole subpatterns; ,$x captures the value of a value pattern,
// evaluated right away in the state's environment; constructors must agree
// on name and arity.
bool prim_pattern_match(const PrimPatPtr& pp, const PatternPtr& pat,
                        const EnvPtr& state_env, PpMatch* out) {
  return std::visit(
      overloaded{
          [&](const PpHole&) {
            out->holes.push_back(pat);
            return true;
          },
          [&](const PpValue& v) {
            const auto* vp = std::get_if<ValuePattern>(&pat->node);
            if (!vp) return false;
            Value val = evaluate(vp->expr, state_env);
            out->bindings.push_back(Binding{v.name, Deferred::ready(std::move(val))});
            return true;
          },
          [&](const PpCtor& c) {
            const auto* cp = std::get_if<CtorPattern>(&pat->node);
            if (!cp || cp->name != c.name || cp->args.size() != c.args.size())
              return false;
            for (std::size_t i = 0; i < c.args.size(); ++i) {
              if (!prim_pattern_match(c.args[i], cp->args[i], state_env, out))
                return false;
            }
            return true;
          },
      },
      pp->node);
}

// Destructures the target. Failure is an answer, not an error; only forcing
// the target itself can throw.
bool data_pattern_match(const PrimDataPtr& dp, const DeferredPtr& target,
                        std::vector<Binding>* out) {
  return std::visit(
      overloaded{
          [&](const DpVar& v) {
            out->push_back(Binding{v.name, target});
            return true;
          },
          [&](const DpWildcard&) { return true; },
          [&](const DpEmpty&) {
            const Value& val = target->force();
            return val.is_collection() && val.as_collection().items.is_empty();
          },
          [&](const DpConsSplit& cs) {
            const Value& val = target->force();
            if (!val.is_collection()) return false;
            CollectionSeq s = val.as_collection().items;
            if (s.is_empty()) return false;
            if (!data_pattern_match(cs.head, s.head(), out)) return false;
            DeferredPtr rest = Deferred::ready(Value::collection(s.tail()));
            return data_pattern_match(cs.rest, rest, out);
          },
          [&](const DpCtor& c) {
            const Value& val = target->force();
            if (!val.is_data()) return false;
            const DataValue& d = val.as_data();
            if (d.name != c.name || d.args.size() != c.args.size()) return false;
            for (std::size_t i = 0; i < c.args.size(); ++i) {
              if (!data_pattern_match(c.args[i], d.args[i], out)) return false;
            }
            return true;
          },
      },
      dp->node);
}

StateSeq match_with_something(const MatchingAtom& atom, const AtomStack& rest,
                              const EnvPtr& env) {
  if (const auto* var = std::get_if<VarPattern>(&atom.pattern->node)) {
    EnvPtr bound = Env::extend(env, {Binding{var->name, atom.target}});
    return StateSeq::single(MatchingState{rest, std::move(bound)});
  }
  if (std::holds_alternative<WildcardPattern>(atom.pattern->node)) {
    return StateSeq::single(MatchingState{rest, env});
  }
  throw EvalError("something supports only wildcards and pattern variables",
                  atom.pattern->pos);
}

StateSeq match_with_tuple(const MatchingAtom& atom, const AtomStack& rest,
                          const EnvPtr& env) {
  const TupleValue& matchers = atom.matcher.as_tuple();
  // A variable or wildcard takes the whole tuple, same as under something.
  if (const auto* var = std::get_if<VarPattern>(&atom.pattern->node)) {
    EnvPtr bound = Env::extend(env, {Binding{var->name, atom.target}});
    return StateSeq::single(MatchingState{rest, std::move(bound)});
  }
  if (std::holds_alternative<WildcardPattern>(atom.pattern->node)) {
    return StateSeq::single(MatchingState{rest, env});
  }
  const auto* tp = std::get_if<TuplePattern>(&atom.pattern->node);
  if (!tp) {
    throw EvalError("tuple matcher needs a tuple pattern, got " +
                        to_source(atom.pattern),
                    atom.pattern->pos);
  }
  if (tp->items.size() != matchers.items.size()) {
    throw EvalError("tuple pattern has " + std::to_string(tp->items.size()) +
                        " components, matcher has " +
                        std::to_string(matchers.items.size()),
                    atom.pattern->pos);
  }
  const TupleValue& targets = atom.target->force().as_tuple();
  if (targets.items.size() != matchers.items.size()) {
    throw EvalError("tuple target has " + std::to_string(targets.items.size()) +
                        " components, expected " +
                        std::to_string(matchers.items.size()),
                    atom.pattern->pos);
  }
  AtomStack stack = rest;
  for (std::size_t i = matchers.items.size(); i-- > 0;) {
    stack = stack.push(
        MatchingAtom{tp->items[i], matchers.items[i]->force(), targets.items[i]});
  }
  return StateSeq::single(MatchingState{std::move(stack), env});
}

StateSeq match_with_matcher(const MatchingAtom& atom, const AtomStack& rest,
                            const EnvPtr& env) {
  const auto& mv = *atom.matcher.as_matcher();
  for (const MatcherClause& clause : *mv.clauses) {
    PpMatch pm;
    if (!prim_pattern_match(clause.pp, atom.pattern, env, &pm)) continue;

    for (const DataClause& dclause : clause.data_clauses) {
      std::vector<Binding> data_bindings;
      if (!data_pattern_match(dclause.dp, atom.target, &data_bindings)) continue;

      // First hit wins: evaluate the next matcher in the matcher's own
      // environment and the candidate collection under the clause bindings.
      // The next-matcher expression denotes a tuple of one matcher per hole;
      // with a single hole a bare matcher is accepted too.
      std::size_t k = pm.holes.size();
      std::vector<Value> sub_matchers;
      if (k >= 1) {
        Value next_matcher = evaluate(clause.next_matcher, mv.env);
        if (k == 1 && !next_matcher.is_tuple()) {
          sub_matchers.push_back(std::move(next_matcher));
        } else {
          const TupleValue& subs = next_matcher.as_tuple();
          if (subs.items.size() != k) {
            throw EvalError("matcher clause has " + std::to_string(k) +
                                " holes but " +
                                std::to_string(subs.items.size()) +
                                " next matchers",
                            clause.next_matcher->pos);
          }
          sub_matchers.reserve(k);
          for (const auto& s : subs.items) sub_matchers.push_back(s->force());
        }
      }

      std::vector<Binding> all = std::move(pm.bindings);
      for (auto& b : data_bindings) all.push_back(std::move(b));
      EnvPtr clause_env = Env::extend(mv.env, std::move(all));
      CollectionSeq candidates =
          evaluate(dclause.next_target, clause_env).as_collection().items;

      std::vector<PatternPtr> holes = std::move(pm.holes);
      return seq_map<MatchingState>(
          candidates,
          [holes, sub_matchers, rest, env](const DeferredPtr& cand) -> MatchingState {
            if (holes.empty()) return MatchingState{rest, env};
            if (holes.size() == 1) {
              return MatchingState{
                  rest.push(MatchingAtom{holes[0], sub_matchers[0], cand}), env};
            }
            const TupleValue& parts = cand->force().as_tuple();
            if (parts.items.size() != holes.size()) {
              throw EvalError("candidate tuple has " +
                              std::to_string(parts.items.size()) +
                              " components, expected " +
                              std::to_string(holes.size()));
            }
            AtomStack stack = rest;
            for (std::size_t i = holes.size(); i-- > 0;) {
              stack = stack.push(
                  MatchingAtom{holes[i], sub_matchers[i], parts.items[i]});
            }
            return MatchingState{std::move(stack), env};
          });
    }
    // The pattern was understood but the target refuted every data clause.
    return StateSeq::empty();
  }
  throw EvalError("pattern not supported by matcher: " + to_source(atom.pattern),
                  atom.pattern->pos);
}

}  // namespace

StateSeq match_function(const MatchingAtom& atom, const AtomStack& rest,
                        const EnvPtr& env) {
  ++stats::match_calls;
  switch (atom.matcher.kind()) {
    case Value::Kind::kSomething:
      return match_with_something(atom, rest, env);
    case Value::Kind::kTuple:
      return match_with_tuple(atom, rest, env);
    case Value::Kind::kMatcher:
      return match_with_matcher(atom, rest, env);
    default:
      throw EvalError(std::string("not a matcher: ") + atom.matcher.kind_name(),
                      atom.pattern->pos);
  }
}

// ---- the machine ----------------------------------------------------------------

Machine::Machine(PatternPtr pattern, Value matcher, DeferredPtr target, EnvPtr env)
    : base_(env) {
  MatchingState init{
      AtomStack().push(MatchingAtom{std::move(pattern), std::move(matcher),
                                    std::move(target)}),
      std::move(env)};
  frontier_.push_back(StateSeq::single(std::move(init)));
}

bool Machine::step_round() {
  if (frontier_.empty()) return false;
  std::deque<StateSeq> next;
  for (StateSeq& node : frontier_) {
    if (node.is_empty()) continue;
    const MatchingState st = node.head();
    StateSeq tail = node.tail();
    if (st.atoms.empty()) {
      pending_.push_back(st.env);
      if (!tail.known_empty()) next.push_back(std::move(tail));
      continue;
    }
    StateSeq child = match_function(st.atoms.top(), st.atoms.pop(), st.env);
    if (!child.known_empty()) next.push_back(std::move(child));
    if (!tail.known_empty()) next.push_back(std::move(tail));
  }
  frontier_ = std::move(next);
  return true;
}

std::optional<EnvPtr> Machine::next_result() {
  while (pending_.empty() && !frontier_.empty()) step_round();
  if (pending_.empty()) return std::nullopt;
  EnvPtr r = std::move(pending_.front());
  pending_.pop_front();
  return r;
}

Seq<EnvPtr> enumerate(PatternPtr pattern, Value matcher, DeferredPtr target,
                      EnvPtr env) {
  auto machine = std::make_shared<Machine>(std::move(pattern), std::move(matcher),
                                           std::move(target), std::move(env));
  return Seq<EnvPtr>::generate(
      [machine]() -> std::optional<EnvPtr> { return machine->next_result(); });
}

std::optional<EnvPtr> first_match(PatternPtr pattern, Value matcher, DeferredPtr target,
                                  EnvPtr env) {
  Machine machine(std::move(pattern), std::move(matcher), std::move(target),
                  std::move(env));
  return machine.next_result();
}

// ---- tracing ---------------------------------------------------------------------

std::string show_state(const MatchingState& st, const Env* base) {
  PrintOptions opts;
  opts.max_collection_items = 32;
  std::string out = "MState {";
  bool first = true;
  for (const MatchingAtom* a : st.atoms.items()) {
    if (!first) out += ' ';
    first = false;
    out += '[';
    out += to_source(a->pattern);
    out += ' ';
    out += matcher_display(a->matcher);
    out += ' ';
    out += print_value(a->target->force(), opts);
    out += ']';
  }
  out += "} env {";
  first = true;
  for (const Binding* b : st.env->bindings_since(base)) {
    if (!first) out += ' ';
    first = false;
    out += '[';
    out += b->name;
    out += ' ';
    out += print_value(b->value->force(), opts);
    out += ']';
  }
  out += '}';
  return out;
}

void trace(PatternPtr pattern, Value matcher, DeferredPtr target, EnvPtr env,
           int rounds, std::ostream& out) {
  const Env* base = env.get();
  Machine machine(std::move(pattern), std::move(matcher), std::move(target),
                  std::move(env));
  for (int r = 0; r <= rounds; ++r) {
    if (r > 0) {
      if (!machine.step_round()) break;
      if (machine.frontier().empty()) break;
      out << "----------------------------------------\n";
    }
    for (const StateSeq& node : machine.frontier()) {
      for (StateSeq s = node; !s.is_empty(); s = s.tail()) {
        out << show_state(s.head(), base) << '\n';
      }
    }
  }
}

}  // namespace matcha::engine
