#pragma once

#include <vector>

#include "matcha/syntax.hpp"
#include "matcha/value.hpp"

namespace matcha {

// Evaluates to weak head normal form under call-by-need: collection cells,
// tuple slots, data fields and bindings stay deferred until someone forces
// them.
Value evaluate(const ExprPtr& expr, const EnvPtr& env);

// Suspends an expression in an environment as a memoized thunk.
DeferredPtr defer(ExprPtr expr, EnvPtr env);

Value apply_function(const Value& fn, std::vector<DeferredPtr> args, SourcePos pos = {});

// Fresh environment holding the builtin functions. Top-level defines append
// to this same frame, so earlier definitions see later ones (recursion and
// mutual recursion just work).
EnvPtr make_builtin_env();

// (define $name expr): binds lazily; when the value later turns out to be a
// matcher it picks up the definition name for display purposes.
void eval_define(const DefineForm& def, const EnvPtr& env);

// Runs a top-level form; returns the value for expression forms.
std::optional<Value> eval_top(const TopForm& form, const EnvPtr& env);

}  // namespace matcha
