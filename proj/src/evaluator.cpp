#include "matcha/evaluator.hpp"

#include <algorithm>

#include "matcha/engine.hpp"
#include "matcha/error.hpp"
#include "matcha/stats.hpp"

namespace matcha {

namespace {

Value eval_apply(const ApplyExpr& app, SourcePos pos, const EnvPtr& env) {
  Value fn = evaluate(app.fn, env);
  std::vector<DeferredPtr> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(defer(a, env));
  Value result = apply_function(fn, std::move(args), pos);
  // Matchers built by functions show up in traces as the application that
  // made them, e.g. (multiset integer).
  if (result.is_matcher()) {
    auto& m = *result.as_matcher();
    if (m.display.empty() && m.display_head.empty()) {
      if (const auto* var = std::get_if<VarExpr>(&app.fn->node)) {
        m.display_head = var->name;
        for (const auto& a : app.args) m.display_args.push_back(defer(a, env));
      }
    }
  }
  return result;
}

Value eval_match_all(const MatchAllExpr& ma, const EnvPtr& env) {
  DeferredPtr target = defer(ma.target, env);
  Value matcher = evaluate(ma.matcher, env);
  Seq<EnvPtr> results = engine::enumerate(ma.clause.pattern, matcher, target, env);
  ExprPtr body = ma.clause.body;
  CollectionSeq out = seq_map<DeferredPtr>(
      results, [body](const EnvPtr& renv) { return defer(body, renv); });
  return Value::collection(std::move(out));
}

Value eval_match(const MatchExpr& m, SourcePos pos, const EnvPtr& env) {
  DeferredPtr target = defer(m.target, env);
  Value matcher = evaluate(m.matcher, env);
  for (const auto& clause : m.clauses) {
    auto found = engine::first_match(clause.pattern, matcher, target, env);
    if (found) return evaluate(clause.body, *found);
  }
  PrintOptions opts;
  opts.max_collection_items = 32;
  throw EvalError("no matching clause for " + print_value(target->force(), opts), pos);
}

}  // namespace

Value evaluate(const ExprPtr& expr, const EnvPtr& env) {
  ++stats::evals;
  return std::visit(
      overloaded{
          [&](const VarExpr& v) -> Value {
            const DeferredPtr* d = env->lookup(v.name);
            if (!d) throw EvalError("unbound variable '" + v.name + "'", expr->pos);
            return (*d)->force();
          },
          [&](const ConstExpr& c) -> Value {
            return std::visit(
                overloaded{
                    [](std::int64_t i) { return Value::integer(i); },
                    [](bool b) { return Value::boolean(b); },
                    [](const std::string& s) { return Value::string(s); },
                },
                c.value);
          },
          [&](const LambdaExpr& l) -> Value {
            return Value::closure(
                std::make_shared<ClosureValue>(ClosureValue{l.params, l.body, env}));
          },
          [&](const ApplyExpr& a) -> Value { return eval_apply(a, expr->pos, env); },
          [&](const TupleExpr& t) -> Value {
            std::vector<DeferredPtr> items;
            items.reserve(t.items.size());
            for (const auto& e : t.items) items.push_back(defer(e, env));
            return Value::tuple(std::move(items));
          },
          [&](const CollectionExpr& c) -> Value {
            std::vector<DeferredPtr> items;
            items.reserve(c.items.size());
            for (const auto& e : c.items) items.push_back(defer(e, env));
            return Value::collection(CollectionSeq::from_vector(std::move(items)));
          },
          [&](const DataExpr& d) -> Value {
            std::vector<DeferredPtr> args;
            args.reserve(d.args.size());
            for (const auto& e : d.args) args.push_back(defer(e, env));
            return Value::data(d.name, std::move(args));
          },
          [&](const MatchAllExpr& ma) -> Value { return eval_match_all(ma, env); },
          [&](const MatchExpr& m) -> Value { return eval_match(m, expr->pos, env); },
          [&](const SomethingExpr&) -> Value { return Value::something(); },
          [&](const MatcherExpr& m) -> Value {
            return Value::matcher(
                std::make_shared<MatcherValue>(MatcherValue{m.clauses, env, "", "", {}}));
          },
          [&](const IfExpr& i) -> Value {
            Value c = evaluate(i.cond, env);
            if (!c.is_bool())
              throw EvalError(std::string("if condition must be a boolean, got ") +
                                  c.kind_name(),
                              i.cond->pos);
            return evaluate(c.as_bool() ? i.then_branch : i.else_branch, env);
          },
      },
      expr->node);
}

DeferredPtr defer(ExprPtr expr, EnvPtr env) {
  // Constants and lambdas cost nothing to evaluate; skip the thunk machinery.
  if (std::holds_alternative<ConstExpr>(expr->node)) {
    return Deferred::ready(evaluate(expr, env));
  }
  return Deferred::thunk(
      [expr = std::move(expr), env = std::move(env)]() { return evaluate(expr, env); });
}

Value apply_function(const Value& fn, std::vector<DeferredPtr> args, SourcePos pos) {
  if (fn.is_closure()) {
    const auto& c = fn.as_closure();
    if (args.size() != c->params.size()) {
      throw EvalError("expected " + std::to_string(c->params.size()) +
                          " arguments, got " + std::to_string(args.size()),
                      pos);
    }
    std::vector<Binding> bindings;
    bindings.reserve(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
      bindings.push_back(Binding{c->params[i], std::move(args[i])});
    }
    return evaluate(c->body, Env::extend(c->env, std::move(bindings)));
  }
  if (fn.is_builtin()) {
    const auto& b = fn.as_builtin();
    int n = static_cast<int>(args.size());
    if (n < b->min_args || (b->max_args >= 0 && n > b->max_args)) {
      throw EvalError(b->name + ": wrong number of arguments (" + std::to_string(n) + ")",
                      pos);
    }
    return b->fn(args);
  }
  throw EvalError(std::string("cannot apply a ") + fn.kind_name(), pos);
}

void eval_define(const DefineForm& def, const EnvPtr& env) {
  ExprPtr expr = def.expr;
  std::string name = def.name;
  EnvPtr scope = env;
  env->define(def.name, Deferred::thunk([expr, scope, name]() {
    Value v = evaluate(expr, scope);
    if (v.is_matcher()) {
      auto& m = *v.as_matcher();
      if (m.display.empty() && m.display_head.empty()) m.display = name;
    }
    return v;
  }));
}

std::optional<Value> eval_top(const TopForm& form, const EnvPtr& env) {
  if (const auto* def = std::get_if<DefineForm>(&form)) {
    eval_define(*def, env);
    return std::nullopt;
  }
  return evaluate(std::get<ExprPtr>(form), env);
}

}  // namespace matcha
