#include "matcha/value.hpp"

#include <sstream>

namespace matcha {

// ---- Value -----------------------------------------------------------------

Value Value::integer(std::int64_t i) { return Value(Storage(i)); }
Value Value::boolean(bool b) { return Value(Storage(b)); }
Value Value::string(std::string s) { return Value(Storage(std::move(s))); }
Value Value::tuple(std::vector<DeferredPtr> items) {
  return Value(Storage(std::make_shared<TupleValue>(TupleValue{std::move(items)})));
}
Value Value::collection(CollectionSeq items) {
  return Value(Storage(std::make_shared<CollectionValue>(CollectionValue{std::move(items)})));
}
Value Value::data(std::string name, std::vector<DeferredPtr> args) {
  return Value(Storage(std::make_shared<DataValue>(DataValue{std::move(name), std::move(args)})));
}
Value Value::closure(std::shared_ptr<ClosureValue> c) { return Value(Storage(std::move(c))); }
Value Value::matcher(std::shared_ptr<MatcherValue> m) { return Value(Storage(std::move(m))); }
Value Value::something() { return Value(Storage(SomethingValue{})); }
Value Value::builtin(std::shared_ptr<BuiltinValue> b) { return Value(Storage(std::move(b))); }

Value::Kind Value::kind() const {
  return std::visit(
      overloaded{
          [](std::int64_t) { return Kind::kInt; },
          [](bool) { return Kind::kBool; },
          [](const std::string&) { return Kind::kString; },
          [](const std::shared_ptr<TupleValue>&) { return Kind::kTuple; },
          [](const std::shared_ptr<CollectionValue>&) { return Kind::kCollection; },
          [](const std::shared_ptr<DataValue>&) { return Kind::kData; },
          [](const std::shared_ptr<ClosureValue>&) { return Kind::kClosure; },
          [](const std::shared_ptr<MatcherValue>&) { return Kind::kMatcher; },
          [](const SomethingValue&) { return Kind::kSomething; },
          [](const std::shared_ptr<BuiltinValue>&) { return Kind::kBuiltin; },
      },
      v_);
}

const char* Value::kind_name() const {
  switch (kind()) {
    case Kind::kInt: return "integer";
    case Kind::kBool: return "boolean";
    case Kind::kString: return "string";
    case Kind::kTuple: return "tuple";
    case Kind::kCollection: return "collection";
    case Kind::kData: return "data";
    case Kind::kClosure: return "closure";
    case Kind::kMatcher: return "matcher";
    case Kind::kSomething: return "something";
    case Kind::kBuiltin: return "builtin";
  }
  return "?";
}

namespace {
[[noreturn]] void bad_access(const Value& v, const char* wanted) {
  throw EvalError(std::string("expected a ") + wanted + ", got " + v.kind_name());
}
}  // namespace

std::int64_t Value::as_int() const {
  if (auto* p = std::get_if<std::int64_t>(&v_)) return *p;
  bad_access(*this, "integer");
}
bool Value::as_bool() const {
  if (auto* p = std::get_if<bool>(&v_)) return *p;
  bad_access(*this, "boolean");
}
const std::string& Value::as_string() const {
  if (auto* p = std::get_if<std::string>(&v_)) return *p;
  bad_access(*this, "string");
}
const TupleValue& Value::as_tuple() const {
  if (auto* p = std::get_if<std::shared_ptr<TupleValue>>(&v_)) return **p;
  bad_access(*this, "tuple");
}
const CollectionValue& Value::as_collection() const {
  if (auto* p = std::get_if<std::shared_ptr<CollectionValue>>(&v_)) return **p;
  bad_access(*this, "collection");
}
const DataValue& Value::as_data() const {
  if (auto* p = std::get_if<std::shared_ptr<DataValue>>(&v_)) return **p;
  bad_access(*this, "data value");
}
const std::shared_ptr<ClosureValue>& Value::as_closure() const {
  if (auto* p = std::get_if<std::shared_ptr<ClosureValue>>(&v_)) return *p;
  bad_access(*this, "closure");
}
const std::shared_ptr<MatcherValue>& Value::as_matcher() const {
  if (auto* p = std::get_if<std::shared_ptr<MatcherValue>>(&v_)) return *p;
  bad_access(*this, "matcher");
}
const std::shared_ptr<BuiltinValue>& Value::as_builtin() const {
  if (auto* p = std::get_if<std::shared_ptr<BuiltinValue>>(&v_)) return *p;
  bad_access(*this, "builtin");
}

// ---- Deferred ----------------------------------------------------------------

DeferredPtr Deferred::ready(Value v) {
  auto d = DeferredPtr(new Deferred());
  d->state_ = State::kReady;
  d->value_ = std::move(v);
  return d;
}

DeferredPtr Deferred::thunk(std::function<Value()> f) {
  auto d = DeferredPtr(new Deferred());
  d->state_ = State::kThunk;
  d->thunk_ = std::move(f);
  return d;
}

const Value& Deferred::force() {
  switch (state_) {
    case State::kReady:
      return value_;
    case State::kRunning:
      throw EvalError("divergent binding");
    case State::kThunk: {
      auto f = std::move(thunk_);
      thunk_ = nullptr;
      state_ = State::kRunning;
      try {
        value_ = f();
      } catch (...) {
        thunk_ = std::move(f);  // keep the cell retryable after an error
        state_ = State::kThunk;
        throw;
      }
      state_ = State::kReady;
      return value_;
    }
  }
  throw EvalError("corrupt deferred cell");
}

// ---- Env -----------------------------------------------------------------------

EnvPtr Env::root() { return EnvPtr(new Env(nullptr)); }

EnvPtr Env::extend(EnvPtr parent, std::vector<Binding> bindings) {
  auto e = EnvPtr(new Env(std::move(parent)));
  e->slots_ = std::move(bindings);
  return e;
}

const DeferredPtr* Env::lookup(std::string_view name) const {
  for (const Env* e = this; e != nullptr; e = e->parent_.get()) {
    for (auto it = e->slots_.rbegin(); it != e->slots_.rend(); ++it) {
      if (it->name == name) return &it->value;
    }
  }
  return nullptr;
}

void Env::define(std::string name, DeferredPtr value) {
  slots_.push_back(Binding{std::move(name), std::move(value)});
}

std::vector<const Binding*> Env::bindings_since(const Env* stop) const {
  std::vector<const Binding*> out;
  std::vector<const Env*> chain;
  for (const Env* e = this; e != nullptr && e != stop; e = e->parent_.get()) chain.push_back(e);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const Binding& b : (*it)->slots_) out.push_back(&b);
  }
  return out;
}

// ---- printing -------------------------------------------------------------------

namespace {

void print_into(std::ostringstream& out, const Value& v, const PrintOptions& opts);

void print_deferred(std::ostringstream& out, const DeferredPtr& d, const PrintOptions& opts) {
  print_into(out, d->force(), opts);
}

void print_into(std::ostringstream& out, const Value& v, const PrintOptions& opts) {
  switch (v.kind()) {
    case Value::Kind::kInt:
      out << v.as_int();
      return;
    case Value::Kind::kBool:
      out << (v.as_bool() ? "#t" : "#f");
      return;
    case Value::Kind::kString:
      out << quote_string(v.as_string());
      return;
    case Value::Kind::kTuple: {
      out << '[';
      const auto& items = v.as_tuple().items;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out << ' ';
        print_deferred(out, items[i], opts);
      }
      out << ']';
      return;
    }
    case Value::Kind::kCollection: {
      out << '{';
      std::size_t n = 0;
      for (CollectionSeq s = v.as_collection().items; !s.is_empty(); s = s.tail()) {
        if (n >= opts.max_collection_items) {
          out << (n > 0 ? " …" : "…");
          break;
        }
        if (n > 0) out << ' ';
        print_deferred(out, s.head(), opts);
        ++n;
      }
      out << '}';
      return;
    }
    case Value::Kind::kData: {
      const auto& d = v.as_data();
      out << '<' << d.name;
      for (const auto& a : d.args) {
        out << ' ';
        print_deferred(out, a, opts);
      }
      out << '>';
      return;
    }
    case Value::Kind::kClosure:
      out << "#<closure>";
      return;
    case Value::Kind::kMatcher:
      out << "#<matcher>";
      return;
    case Value::Kind::kSomething:
      out << "something";
      return;
    case Value::Kind::kBuiltin:
      out << "#<builtin " << v.as_builtin()->name << '>';
      return;
  }
}

}  // namespace

std::string print_value(const Value& v, const PrintOptions& opts) {
  std::ostringstream out;
  print_into(out, v, opts);
  return out.str();
}

std::string matcher_display(const Value& m) {
  if (m.is_something()) return "something";
  if (m.is_tuple()) {
    std::string out = "[";
    const auto& items = m.as_tuple().items;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ' ';
      out += matcher_display(items[i]->force());
    }
    out += ']';
    return out;
  }
  if (!m.is_matcher()) return print_value(m, PrintOptions{32});
  MatcherValue& mv = *m.as_matcher();
  if (!mv.display.empty()) return mv.display;
  if (!mv.display_head.empty()) {
    std::string out = "(" + mv.display_head;
    for (const auto& a : mv.display_args) {
      out += ' ';
      out += matcher_display(a->force());
    }
    out += ')';
    mv.display = out;  // cache
    mv.display_args.clear();
    return out;
  }
  return "#<matcher>";
}

// ---- structural equality ------------------------------------------------------------

bool structural_equal(const Value& a, const Value& b) {
  auto incomparable = [](const Value& v) {
    switch (v.kind()) {
      case Value::Kind::kClosure:
      case Value::Kind::kMatcher:
      case Value::Kind::kSomething:
      case Value::Kind::kBuiltin:
        return true;
      default:
        return false;
    }
  };
  if (incomparable(a) || incomparable(b)) {
    throw EvalError(std::string("incomparable value: ") + a.kind_name() + " vs " + b.kind_name());
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::kInt:
      return a.as_int() == b.as_int();
    case Value::Kind::kBool:
      return a.as_bool() == b.as_bool();
    case Value::Kind::kString:
      return a.as_string() == b.as_string();
    case Value::Kind::kTuple: {
      const auto& xs = a.as_tuple().items;
      const auto& ys = b.as_tuple().items;
      if (xs.size() != ys.size()) return false;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!structural_equal(xs[i]->force(), ys[i]->force())) return false;
      }
      return true;
    }
    case Value::Kind::kData: {
      const auto& x = a.as_data();
      const auto& y = b.as_data();
      if (x.name != y.name || x.args.size() != y.args.size()) return false;
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (!structural_equal(x.args[i]->force(), y.args[i]->force())) return false;
      }
      return true;
    }
    case Value::Kind::kCollection: {
      CollectionSeq xs = a.as_collection().items;
      CollectionSeq ys = b.as_collection().items;
      while (true) {
        bool xe = xs.is_empty();
        bool ye = ys.is_empty();
        if (xe || ye) return xe == ye;
        if (!structural_equal(xs.head()->force(), ys.head()->force())) return false;
        xs = xs.tail();
        ys = ys.tail();
      }
    }
    default:
      return false;  // unreachable
  }
}

}  // namespace matcha
