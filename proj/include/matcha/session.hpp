#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "matcha/value.hpp"

namespace matcha {

struct SessionOptions {
  bool with_prelude = true;
  std::vector<std::string> prelude_sections;  // empty: the whole library
};

// One interpreter instance: builtins, optional prelude, and a global
// environment that top-level defines extend.
class Session {
 public:
  explicit Session(SessionOptions opts = {});

  const EnvPtr& env() const { return env_; }

  // Evaluates all top-level forms in order; returns the values of the
  // non-define forms.
  std::vector<Value> run_source(std::string_view source);

  // Exactly one expression.
  Value eval_source(std::string_view source);

 private:
  EnvPtr env_;
};

struct BenchResult {
  int k = 0;
  std::int64_t n = 0;
  std::uint64_t calls = 0;  // match_function invocations, deterministic
  double ms = 0.0;          // best wall time over reps
};

// The sequential-pattern workload: matches n zeros with the multiset matcher
// against <cons $x <cons ,(+ x 1) ... _>> nested k deep, draining all (zero)
// results. Each rep runs in a fresh session so memoization cannot help.
BenchResult run_seq_bench(int k, std::int64_t n, int reps);

// The query text the benchmark runs, exposed for tests.
std::string seq_bench_query(int k, std::int64_t n);

}  // namespace matcha
