#include "matcha/session.hpp"

#include <chrono>

#include "matcha/evaluator.hpp"
#include "matcha/prelude.hpp"
#include "matcha/reader.hpp"
#include "matcha/stats.hpp"

namespace matcha {

Session::Session(SessionOptions opts) : env_(make_builtin_env()) {
  if (!opts.prelude_sections.empty()) {
    load_prelude_sections(env_, opts.prelude_sections);
  } else if (opts.with_prelude) {
    load_prelude(env_);
  }
}

std::vector<Value> Session::run_source(std::string_view source) {
  std::vector<Value> out;
  for (const TopForm& form : reader::parse_program(source)) {
    if (auto v = eval_top(form, env_)) out.push_back(std::move(*v));
  }
  return out;
}

Value Session::eval_source(std::string_view source) {
  return evaluate(reader::parse_expression(source), env_);
}

std::string seq_bench_query(int k, std::int64_t n) {
  std::string pat = "_";
  for (int i = k; i >= 2; --i) {
    pat = "<cons ,(+ x " + std::to_string(i - 1) + ") " + pat + ">";
  }
  pat = "<cons $x " + pat + ">";
  return "(match-all (take " + std::to_string(n) +
         " (repeat 0)) (multiset integer) [" + pat + " x])";
}

BenchResult run_seq_bench(int k, std::int64_t n, int reps) {
  BenchResult out{k, n, 0, 0.0};
  std::string query = seq_bench_query(k, n);
  if (reps < 1) reps = 1;
  for (int rep = 0; rep < reps; ++rep) {
    Session session;
    stats::reset();
    auto start = std::chrono::steady_clock::now();
    Value result = session.eval_source(query);
    CollectionSeq items = result.as_collection().items;
    while (!items.is_empty()) items = items.tail();
    auto end = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(end - start).count();
    if (rep == 0 || ms < out.ms) out.ms = ms;
    out.calls = stats::match_calls;
  }
  return out;
}

}  // namespace matcha
