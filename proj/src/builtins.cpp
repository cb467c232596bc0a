#include "matcha/error.hpp"
#include "matcha/evaluator.hpp"
#include "matcha/value.hpp"

namespace matcha {

namespace {

std::int64_t checked_arith(char op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (op) {
    case '+': overflow = __builtin_add_overflow(a, b, &r); break;
    case '-': overflow = __builtin_sub_overflow(a, b, &r); break;
    case '*': overflow = __builtin_mul_overflow(a, b, &r); break;
  }
  if (overflow) throw EvalError("integer overflow");
  return r;
}

Value fold_arith(char op, const std::vector<DeferredPtr>& args) {
  std::int64_t acc = args[0]->force().as_int();
  for (std::size_t i = 1; i < args.size(); ++i) {
    acc = checked_arith(op, acc, args[i]->force().as_int());
  }
  return Value::integer(acc);
}

CollectionSeq take_seq(std::int64_t n, DeferredPtr coll) {
  if (n <= 0) return CollectionSeq::empty();
  return CollectionSeq::suspend([n, coll = std::move(coll)]() {
    CollectionSeq s = coll->force().as_collection().items;
    if (s.is_empty()) return CollectionSeq::empty();
    DeferredPtr rest = Deferred::ready(Value::collection(s.tail()));
    return CollectionSeq::cons(s.head(), take_seq(n - 1, std::move(rest)));
  });
}

CollectionSeq append_seq(DeferredPtr a, DeferredPtr b) {
  return CollectionSeq::suspend([a = std::move(a), b = std::move(b)]() {
    CollectionSeq s = a->force().as_collection().items;
    if (s.is_empty()) return b->force().as_collection().items;
    DeferredPtr rest = Deferred::ready(Value::collection(s.tail()));
    return CollectionSeq::cons(s.head(), append_seq(std::move(rest), b));
  });
}

CollectionSeq repeat_seq(const DeferredPtr& item) {
  return CollectionSeq::suspend(
      [item]() { return CollectionSeq::cons(item, repeat_seq(item)); });
}

CollectionSeq map_seq(const DeferredPtr& fn, DeferredPtr coll) {
  return CollectionSeq::suspend([fn, coll = std::move(coll)]() {
    CollectionSeq s = coll->force().as_collection().items;
    if (s.is_empty()) return CollectionSeq::empty();
    DeferredPtr elem = s.head();
    DeferredPtr mapped = Deferred::thunk(
        [fn, elem]() { return apply_function(fn->force(), {elem}); });
    DeferredPtr rest = Deferred::ready(Value::collection(s.tail()));
    return CollectionSeq::cons(std::move(mapped), map_seq(fn, std::move(rest)));
  });
}

CollectionSeq between_seq(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) return CollectionSeq::empty();
  return CollectionSeq::suspend([lo, hi]() {
    return CollectionSeq::cons(Deferred::ready(Value::integer(lo)),
                               between_seq(lo + 1, hi));
  });
}

void def(const EnvPtr& env, std::string name, int min_args, int max_args,
         std::function<Value(const std::vector<DeferredPtr>&)> fn) {
  auto b = std::make_shared<BuiltinValue>(
      BuiltinValue{name, min_args, max_args, std::move(fn)});
  env->define(std::move(name), Deferred::ready(Value::builtin(std::move(b))));
}

}  // namespace

EnvPtr make_builtin_env() {
  EnvPtr env = Env::root();

  def(env, "+", 2, -1, [](const std::vector<DeferredPtr>& a) { return fold_arith('+', a); });
  def(env, "-", 2, -1, [](const std::vector<DeferredPtr>& a) { return fold_arith('-', a); });
  def(env, "*", 2, -1, [](const std::vector<DeferredPtr>& a) { return fold_arith('*', a); });

  def(env, "eq?", 2, 2, [](const std::vector<DeferredPtr>& a) {
    return Value::boolean(structural_equal(a[0]->force(), a[1]->force()));
  });
  def(env, "lt?", 2, 2, [](const std::vector<DeferredPtr>& a) {
    return Value::boolean(a[0]->force().as_int() < a[1]->force().as_int());
  });
  def(env, "not", 1, 1, [](const std::vector<DeferredPtr>& a) {
    return Value::boolean(!a[0]->force().as_bool());
  });
  def(env, "and", 0, -1, [](const std::vector<DeferredPtr>& a) {
    for (const auto& d : a) {
      if (!d->force().as_bool()) return Value::boolean(false);
    }
    return Value::boolean(true);
  });
  def(env, "or", 0, -1, [](const std::vector<DeferredPtr>& a) {
    for (const auto& d : a) {
      if (d->force().as_bool()) return Value::boolean(true);
    }
    return Value::boolean(false);
  });

  def(env, "car", 1, 1, [](const std::vector<DeferredPtr>& a) {
    CollectionSeq s = a[0]->force().as_collection().items;
    if (s.is_empty()) throw EvalError("car of empty collection");
    return s.head()->force();
  });
  def(env, "cdr", 1, 1, [](const std::vector<DeferredPtr>& a) {
    CollectionSeq s = a[0]->force().as_collection().items;
    if (s.is_empty()) throw EvalError("cdr of empty collection");
    return Value::collection(s.tail());
  });
  def(env, "empty?", 1, 1, [](const std::vector<DeferredPtr>& a) {
    return Value::boolean(a[0]->force().as_collection().items.is_empty());
  });

  def(env, "take", 2, 2, [](const std::vector<DeferredPtr>& a) {
    return Value::collection(take_seq(a[0]->force().as_int(), a[1]));
  });
  def(env, "append", 2, 2, [](const std::vector<DeferredPtr>& a) {
    return Value::collection(append_seq(a[0], a[1]));
  });
  def(env, "repeat", 1, 1, [](const std::vector<DeferredPtr>& a) {
    return Value::collection(repeat_seq(a[0]));
  });
  def(env, "map", 2, 2, [](const std::vector<DeferredPtr>& a) {
    return Value::collection(map_seq(a[0], a[1]));
  });
  def(env, "between", 2, 2, [](const std::vector<DeferredPtr>& a) {
    return Value::collection(between_seq(a[0]->force().as_int(), a[1]->force().as_int()));
  });

  return env;
}

}  // namespace matcha
