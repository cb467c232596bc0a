#include "doctest.h"

#include <string>
#include <vector>

#include "matcha/error.hpp"
#include "matcha/seq.hpp"
#include "matcha/stats.hpp"
#include "matcha/value.hpp"

using namespace matcha;

namespace {

Seq<int> counting_from(int start, int* forces) {
  return Seq<int>::suspend([start, forces] {
    ++*forces;
    return Seq<int>::cons(start, counting_from(start + 1, forces));
  });
}

CollectionSeq int_collection(std::initializer_list<std::int64_t> xs) {
  std::vector<DeferredPtr> items;
  for (auto x : xs) items.push_back(Deferred::ready(Value::integer(x)));
  return CollectionSeq::from_vector(std::move(items));
}

Value int_list(std::initializer_list<std::int64_t> xs) {
  return Value::collection(int_collection(xs));
}

}  // namespace

TEST_CASE("seq suspensions run at most once") {
  int forces = 0;
  Seq<int> s = counting_from(1, &forces);
  CHECK(forces == 0);
  CHECK(s.head() == 1);
  CHECK(forces == 1);
  CHECK(s.head() == 1);
  CHECK(forces == 1);

  // Two cursors over the same stream share the memoized cells.
  Seq<int> a = s;
  std::vector<int> first = a.take(4);
  CHECK(first == std::vector<int>{1, 2, 3, 4});
  CHECK(forces == 4);
  CHECK(s.take(4) == first);
  CHECK(forces == 4);
}

TEST_CASE("seq cell counter tracks forcing globally") {
  stats::reset();
  int forces = 0;
  Seq<int> s = counting_from(10, &forces);
  (void)s.take(3);
  CHECK(stats::cells_forced == 3);
  (void)s.take(3);
  CHECK(stats::cells_forced == 3);
}

TEST_CASE("seq generate produces until exhausted") {
  int n = 0;
  Seq<int> s = Seq<int>::generate([&n]() -> std::optional<int> {
    if (n >= 3) return std::nullopt;
    return n++;
  });
  CHECK(s.take(10) == std::vector<int>{0, 1, 2});
  CHECK(s.is_empty() == false);
  CHECK(s.tail().tail().tail().is_empty());
}

TEST_CASE("seq_map is lazy and preserves order") {
  int forces = 0;
  Seq<int> src = counting_from(1, &forces);
  Seq<int> doubled = seq_map<int>(src, [](const int& x) { return 2 * x; });
  CHECK(forces == 0);
  CHECK(doubled.take(3) == std::vector<int>{2, 4, 6});
  CHECK(forces == 3);
}

TEST_CASE("deferred memoizes and re-arms on exceptions") {
  int runs = 0;
  auto d = Deferred::thunk([&runs] {
    ++runs;
    if (runs == 1) throw EvalError("first call fails");
    return Value::integer(7);
  });
  CHECK(!d->forced());
  CHECK_THROWS_WITH_AS(d->force(), "first call fails", EvalError);
  // The failure does not poison the thunk; a later force may succeed.
  CHECK(d->force().as_int() == 7);
  CHECK(d->force().as_int() == 7);
  CHECK(runs == 2);
}

TEST_CASE("deferred reports self-reference as divergence") {
  DeferredPtr d;
  d = Deferred::thunk([&d] { return d->force(); });
  CHECK_THROWS_WITH_AS(d->force(), "divergent binding", EvalError);
}

TEST_CASE("env lookup, shadowing and define") {
  EnvPtr root = Env::root();
  root->define("x", Deferred::ready(Value::integer(1)));
  EnvPtr inner = Env::extend(root, {{"y", Deferred::ready(Value::integer(2))}});
  CHECK((*inner->lookup("x"))->force().as_int() == 1);
  CHECK((*inner->lookup("y"))->force().as_int() == 2);
  CHECK(inner->lookup("z") == nullptr);

  EnvPtr shadow = Env::extend(inner, {{"x", Deferred::ready(Value::integer(9))}});
  CHECK((*shadow->lookup("x"))->force().as_int() == 9);
  CHECK((*inner->lookup("x"))->force().as_int() == 1);

  // defines are visible through existing extensions (the root frame grows).
  root->define("late", Deferred::ready(Value::integer(3)));
  CHECK((*shadow->lookup("late"))->force().as_int() == 3);
}

TEST_CASE("bindings_since walks only the delta") {
  EnvPtr base = Env::root();
  base->define("g", Deferred::ready(Value::integer(0)));
  EnvPtr a = Env::extend(base, {{"m", Deferred::ready(Value::integer(2))}});
  EnvPtr b = Env::extend(a, {{"n", Deferred::ready(Value::integer(5))}});
  auto delta = b->bindings_since(base.get());
  REQUIRE(delta.size() == 2);
  CHECK(delta[0]->name == "m");
  CHECK(delta[1]->name == "n");
  CHECK(b->bindings_since(b.get()).empty());
}

TEST_CASE("print_value formats every value shape") {
  CHECK(print_value(Value::integer(-42)) == "-42");
  CHECK(print_value(Value::boolean(true)) == "#t");
  CHECK(print_value(Value::boolean(false)) == "#f");
  CHECK(print_value(Value::string("a\"b\n")) == "\"a\\\"b\\n\"");
  CHECK(print_value(int_list({1, 2, 3})) == "{1 2 3}");
  CHECK(print_value(Value::collection(CollectionSeq::empty())) == "{}");
  CHECK(print_value(Value::tuple({Deferred::ready(Value::integer(1)),
                                  Deferred::ready(int_list({2}))})) ==
        "[1 {2}]");
  CHECK(print_value(Value::data("Pair", {Deferred::ready(Value::integer(2)),
                                         Deferred::ready(Value::integer(5))})) ==
        "<Pair 2 5>");
  CHECK(print_value(Value::something()) == "something");
}

TEST_CASE("print_value caps long collections") {
  std::vector<DeferredPtr> items;
  for (int i = 1; i <= 40; ++i) items.push_back(Deferred::ready(Value::integer(i)));
  Value v = Value::collection(CollectionSeq::from_vector(std::move(items)));
  PrintOptions opts;
  opts.max_collection_items = 4;
  CHECK(print_value(v, opts) == "{1 2 3 4 …}");
}

TEST_CASE("printing a capped collection leaves its tail unforced") {
  int forces = 0;
  auto stream = [&forces](auto&& self, int n) -> CollectionSeq {
    return CollectionSeq::suspend([&forces, self, n] {
      ++forces;
      return CollectionSeq::cons(Deferred::ready(Value::integer(n)),
                                 self(self, n + 1));
    });
  };
  Value v = Value::collection(stream(stream, 1));
  PrintOptions opts;
  opts.max_collection_items = 3;
  CHECK(print_value(v, opts) == "{1 2 3 …}");
  CHECK(forces <= 4);
}

TEST_CASE("structural equality compares by value") {
  CHECK(structural_equal(int_list({1, 2}), int_list({1, 2})));
  CHECK(!structural_equal(int_list({1, 2}), int_list({2, 1})));
  CHECK(!structural_equal(int_list({1}), int_list({1, 1})));
  CHECK(structural_equal(Value::integer(3), Value::integer(3)));
  CHECK(!structural_equal(Value::integer(3), Value::boolean(true)));
  CHECK(structural_equal(
      Value::data("Pair", {Deferred::ready(Value::integer(1)),
                           Deferred::ready(Value::integer(2))}),
      Value::data("Pair", {Deferred::ready(Value::integer(1)),
                           Deferred::ready(Value::integer(2))})));
  CHECK(!structural_equal(
      Value::data("Pair", {Deferred::ready(Value::integer(1))}),
      Value::data("Other", {Deferred::ready(Value::integer(1))})));
}

TEST_CASE("structural equality rejects incomparable values") {
  CHECK_THROWS_AS(structural_equal(Value::something(), Value::something()),
                  EvalError);
}

TEST_CASE("value accessors report kind mismatches") {
  CHECK_THROWS_WITH_AS(Value::integer(1).as_bool(),
                       "expected a boolean, got integer", EvalError);
  CHECK_THROWS_WITH_AS(Value::boolean(true).as_collection().items.is_empty(),
                       "expected a collection, got boolean", EvalError);
}
