#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "matcha/error.hpp"
#include "matcha/seq.hpp"
#include "matcha/syntax.hpp"

namespace matcha {

class Value;
class Deferred;
using DeferredPtr = std::shared_ptr<Deferred>;
class Env;
using EnvPtr = std::shared_ptr<Env>;

using CollectionSeq = Seq<DeferredPtr>;

struct SomethingValue {};

struct TupleValue;
struct CollectionValue;
struct DataValue;
struct ClosureValue;
struct MatcherValue;
struct BuiltinValue;

class Value {
 public:
  enum class Kind { kInt, kBool, kString, kTuple, kCollection, kData, kClosure, kMatcher, kSomething, kBuiltin };

  Value() : v_(std::int64_t{0}) {}

  static Value integer(std::int64_t i);
  static Value boolean(bool b);
  static Value string(std::string s);
  static Value tuple(std::vector<DeferredPtr> items);
  static Value collection(CollectionSeq items);
  static Value data(std::string name, std::vector<DeferredPtr> args);
  static Value closure(std::shared_ptr<ClosureValue> c);
  static Value matcher(std::shared_ptr<MatcherValue> m);
  static Value something();
  static Value builtin(std::shared_ptr<BuiltinValue> b);

  Kind kind() const;
  const char* kind_name() const;

  bool is_int() const { return kind() == Kind::kInt; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_string() const { return kind() == Kind::kString; }
  bool is_tuple() const { return kind() == Kind::kTuple; }
  bool is_collection() const { return kind() == Kind::kCollection; }
  bool is_data() const { return kind() == Kind::kData; }
  bool is_closure() const { return kind() == Kind::kClosure; }
  bool is_matcher() const { return kind() == Kind::kMatcher; }
  bool is_something() const { return kind() == Kind::kSomething; }
  bool is_builtin() const { return kind() == Kind::kBuiltin; }

  std::int64_t as_int() const;
  bool as_bool() const;
  const std::string& as_string() const;
  const TupleValue& as_tuple() const;
  const CollectionValue& as_collection() const;
  const DataValue& as_data() const;
  const std::shared_ptr<ClosureValue>& as_closure() const;
  const std::shared_ptr<MatcherValue>& as_matcher() const;
  const std::shared_ptr<BuiltinValue>& as_builtin() const;

 private:
  using Storage = std::variant<std::int64_t, bool, std::string, std::shared_ptr<TupleValue>,
                               std::shared_ptr<CollectionValue>, std::shared_ptr<DataValue>,
                               std::shared_ptr<ClosureValue>, std::shared_ptr<MatcherValue>,
                               SomethingValue, std::shared_ptr<BuiltinValue>>;
  explicit Value(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

struct TupleValue {
  std::vector<DeferredPtr> items;
};

struct CollectionValue {
  CollectionSeq items;
};

struct DataValue {
  std::string name;
  std::vector<DeferredPtr> args;
};

struct ClosureValue {
  std::vector<std::string> params;
  ExprPtr body;
  EnvPtr env;
};

struct MatcherValue {
  MatcherClausesPtr clauses;
  EnvPtr env;  // environment the matcher expression was evaluated in
  // Display metadata for traces: either an explicit name (from define), or a
  // head + argument values composed lazily the first time it is shown.
  std::string display;
  std::string display_head;
  std::vector<DeferredPtr> display_args;
};

struct BuiltinValue {
  std::string name;
  int min_args = 0;
  int max_args = -1;  // -1: unbounded
  std::function<Value(const std::vector<DeferredPtr>&)> fn;
};

// ---- deferred evaluation -----------------------------------------------------

class Deferred {
 public:
  static DeferredPtr ready(Value v);
  static DeferredPtr thunk(std::function<Value()> f);

  // Runs the suspension once and memoizes. Re-entrant forcing of the same
  // cell reports a divergent binding.
  const Value& force();
  bool forced() const { return state_ == State::kReady; }
  const Value& peek() const { return value_; }  // pre: forced()

 private:
  enum class State { kReady, kThunk, kRunning };
  Deferred() = default;
  State state_ = State::kReady;
  Value value_;
  std::function<Value()> thunk_;
};

inline const Value& force(const DeferredPtr& d) { return d->force(); }

// ---- environments -------------------------------------------------------------

struct Binding {
  std::string name;
  DeferredPtr value;
};

class Env {
 public:
  static EnvPtr root();
  static EnvPtr extend(EnvPtr parent, std::vector<Binding> bindings);

  const DeferredPtr* lookup(std::string_view name) const;

  // Appends a binding to this frame (top-level define / builtins). Extension
  // via extend() never mutates a parent; this is the one mutable entry point
  // and it only ever appends.
  void define(std::string name, DeferredPtr value);

  const EnvPtr& parent() const { return parent_; }

  // Bindings of the frames strictly below `stop` (exclusive), oldest first.
  std::vector<const Binding*> bindings_since(const Env* stop) const;

 private:
  explicit Env(EnvPtr parent) : parent_(std::move(parent)) {}
  EnvPtr parent_;
  std::vector<Binding> slots_;
};

// ---- printing and equality -----------------------------------------------------

struct PrintOptions {
  std::size_t max_collection_items = std::numeric_limits<std::size_t>::max();
};

std::string print_value(const Value& v, const PrintOptions& opts = {});

// How a matcher shows up inside a trace: its recorded name/origin, or the
// value's ordinary printed form when none is known.
std::string matcher_display(const Value& m);

// Deep equality after forcing. Closures, matchers, builtins and something are
// incomparable and raise an error. May diverge when both sides are infinite.
bool structural_equal(const Value& a, const Value& b);

}  // namespace matcha
