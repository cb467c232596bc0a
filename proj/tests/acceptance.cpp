// End-to-end acceptance: one pass/fail line per check, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matcha/engine.hpp"
#include "matcha/error.hpp"
#include "matcha/evaluator.hpp"
#include "matcha/reader.hpp"
#include "matcha/session.hpp"
#include "matcha/stats.hpp"
#include "matcha/value.hpp"

using namespace matcha;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id;
  if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

std::string run(Session& s, const std::string& src) {
  return print_value(s.eval_source(src));
}

void check_output(const std::string& id, const std::string& query,
                  const std::string& expected) {
  Session s;
  std::string got;
  try {
    got = run(s, query);
  } catch (const Error& e) {
    report(id, false, std::string("error: ") + e.what());
    return;
  }
  report(id, got == expected, "got " + got);
}

// ---- generators -----------------------------------------------------------------

std::mt19937 rng(20240817);

std::vector<int> random_ints(int max_len, int max_val) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> val(0, max_val);
  std::vector<int> out(len(rng));
  for (auto& x : out) x = val(rng);
  return out;
}

std::string collection_literal(const std::vector<int>& xs) {
  std::string out = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

std::vector<long long> int_items(const Value& v) {
  std::vector<long long> out;
  for (CollectionSeq s = v.as_collection().items; !s.is_empty(); s = s.tail()) {
    out.push_back(s.head()->force().as_int());
  }
  return out;
}

bool same_multiset(std::vector<long long> a, std::vector<long long> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

double fit_exponent(const std::vector<double>& ns, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = ns.size();
  for (size_t i = 0; i < n; ++i) {
    double x = std::log(ns[i]);
    double y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- criteria -----------------------------------------------------------------

void golden_outputs() {
  check_output("1a join over {1 2 3}",
               "(match-all {1 2 3} (list integer) [<join $xs $ys> [xs ys]])",
               "{[{} {1 2 3}] [{1} {2 3}] [{1 2} {3}] [{1 2 3} {}]}");

  {
    Session s;
    auto start = Clock::now();
    std::string got;
    try {
      got = run(s, "(take 6 twin-primes)");
    } catch (const Error& e) {
      got = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    report("1b (take 6 twin-primes) within 5s",
           got == "{[3 5] [5 7] [11 13] [17 19] [29 31] [41 43]}" && secs <= 5.0,
           "got " + got + " in " + std::to_string(secs) + "s");
  }

  check_output("1c cons over list",
               "(match-all {1 2 3} (list integer) [<cons $x $rest> [x rest]])",
               "{[1 {2 3}]}");
  check_output("1c cons over multiset",
               "(match-all {1 2 3} (multiset integer) [<cons $x $rest> [x rest]])",
               "{[1 {2 3}] [2 {1 3}] [3 {1 2}]}");
  check_output("1c cons over set",
               "(match-all {1 2 3} (set integer) [<cons $x $rest> [x rest]])",
               "{[1 {1 2 3}] [2 {1 2 3}] [3 {1 2 3}]}");

  check_output("1d value pattern via list",
               "(match-all {1 2 3} (list integer) [,{2 1 3} \"Matched\"])", "{}");
  check_output("1d value pattern via multiset",
               "(match-all {1 2 3} (multiset integer) [,{2 1 3} \"Matched\"])",
               "{\"Matched\"}");

  check_output("1e unordered-pair",
               "(match-all <Pair 2 5> (unordered-pair integer) [<pair ,5 $x> x])",
               "{2}");

  check_output("1f non-linear duplicate query",
               "(match-all {2 8 2} (multiset integer) [<cons $m <cons ,m _>> m])",
               "{2 2}");

  check_output(
      "1g fair enumeration over nats",
      "(take 8 (match-all nats (set integer) [<cons $m <cons $n _>> [m n]]))",
      "{[1 1] [1 2] [2 1] [1 3] [2 2] [3 1] [1 4] [2 3]}");
}

void trace_fidelity() {
  Session s;
  ExprPtr e = reader::parse_expression(
      "(match-all {2 8 2} (multiset integer) [<cons $m <cons ,m _>> m])");
  const auto& ma = std::get<MatchAllExpr>(e->node);
  std::ostringstream out;
  engine::trace(ma.clause.pattern, evaluate(ma.matcher, s.env()),
                defer(ma.target, s.env()), s.env(), 9, out);

  std::vector<std::vector<std::string>> rounds(1);
  std::istringstream in(out.str());
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("----", 0) == 0) rounds.emplace_back();
    else rounds.back().push_back(line);
  }

  bool ok = rounds.size() >= 9;
  auto at = [&](size_t r, size_t i) -> std::string {
    return (r < rounds.size() && i < rounds[r].size()) ? rounds[r][i] : "";
  };
  // Step 1: the initial state.
  ok = ok && at(0, 0) ==
      "MState {[<cons $m <cons ,m _>> (multiset integer) {2 8 2}]} env {}";
  // Step 2: one state per choice of the first element.
  ok = ok && rounds[1] == std::vector<std::string>{
      "MState {[$m integer 2] [<cons ,m _> (multiset integer) {8 2}]} env {}",
      "MState {[$m integer 8] [<cons ,m _> (multiset integer) {2 2}]} env {}",
      "MState {[$m integer 2] [<cons ,m _> (multiset integer) {2 8}]} env {}"};
  // Step 4: the binding m=2 has landed in the environment.
  ok = ok && at(3, 0) ==
      "MState {[<cons ,m _> (multiset integer) {8 2}]} env {[m 2]}";
  // Step 5: the remaining pair of candidate states.
  ok = ok && at(4, 0) ==
      "MState {[,m integer 8] [_ (multiset integer) {2}]} env {[m 2]}";
  ok = ok && at(4, 1) ==
      "MState {[,m integer 2] [_ (multiset integer) {8}]} env {[m 2]}";
  // Step 8: a success state.
  ok = ok && at(8, 0) == "MState {} env {[m 2]}";
  report("2 trace reproduces the documented reduction path", ok);
}

std::uint64_t drain_calls(int k, int n) {
  Session s;
  stats::reset();
  Value v = s.eval_source(seq_bench_query(k, n));
  CollectionSeq items = v.as_collection().items;
  while (!items.is_empty()) items = items.tail();
  return stats::match_calls;
}

void complexity() {
  auto suite_start = Clock::now();
  std::vector<double> ns = {32, 64, 128, 256};
  std::map<int, std::vector<double>> calls;
  std::vector<double> seq4_ms;
  for (int k : {2, 3, 4}) {
    for (double n : ns) {
      auto t0 = Clock::now();
      calls[k].push_back(static_cast<double>(drain_calls(k, static_cast<int>(n))));
      double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      if (k == 4) seq4_ms.push_back(ms);
    }
  }

  bool ratio_ok = true;
  std::string ratio_detail;
  for (size_t i = 0; i < ns.size(); ++i) {
    double r = calls[4][i] / calls[2][i];
    if (r > 2.0) {
      ratio_ok = false;
      ratio_detail += "n=" + std::to_string(static_cast<int>(ns[i])) + " ratio=" +
                      std::to_string(r) + " ";
    }
  }
  report("3 calls(k=4)/calls(k=2) <= 2 for n in {32,64,128,256}", ratio_ok,
         ratio_detail);

  bool exp_ok = true;
  std::string exp_detail;
  for (int k : {2, 3, 4}) {
    double e = fit_exponent(ns, calls[k]);
    exp_detail += "k=" + std::to_string(k) + ":" + std::to_string(e) + " ";
    if (e < 1.8 || e > 2.3) exp_ok = false;
  }
  report("3 call-count exponent in [1.8, 2.3]", exp_ok, exp_detail);

  double time_exp = fit_exponent(ns, seq4_ms);
  report("3 seq4 wall-time exponent <= 2.5", time_exp <= 2.5,
         "exponent=" + std::to_string(time_exp));

  double secs = std::chrono::duration<double>(Clock::now() - suite_start).count();
  report("3 complexity suite under 60s", secs < 60.0,
         std::to_string(secs) + "s");
}

void property_value_pattern() {
  Session s;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 200 && ok; ++i) {
    std::vector<int> a = random_ints(6, 5);
    std::vector<int> b;
    if (i % 2 == 0) {
      // Half the cases shuffle a (must match); the rest are independent.
      b.assign(a.begin(), a.end());
      std::shuffle(b.begin(), b.end(), rng);
    } else {
      b = random_ints(6, 5);
    }
    std::vector<long long> al(a.begin(), a.end()), bl(b.begin(), b.end());
    bool expected = same_multiset(al, bl);
    std::string q = "(match-all " + collection_literal(a) +
                    " (multiset integer) [," + collection_literal(b) + " 1])";
    bool got = !s.eval_source(q).as_collection().items.is_empty();
    if (got != expected) {
      ok = false;
      detail = q;
    }
  }
  report("4 multiset value pattern agrees with sorted-compare oracle", ok, detail);
}

void property_cons_shapes() {
  Session s;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 200 && ok; ++i) {
    std::vector<int> a = random_ints(6, 9);
    std::vector<long long> al(a.begin(), a.end());
    std::string lit = collection_literal(a);

    // multiset: one result per element, each a permutation split.
    Value m = s.eval_source("(match-all " + lit +
                            " (multiset integer) [<cons $x $rest> [x rest]])");
    size_t count = 0;
    for (CollectionSeq items = m.as_collection().items; !items.is_empty();
         items = items.tail(), ++count) {
      const TupleValue& t = items.head()->force().as_tuple();
      std::vector<long long> recombined = int_items(t.items[1]->force());
      recombined.push_back(t.items[0]->force().as_int());
      if (!same_multiset(recombined, al)) {
        ok = false;
        detail = "multiset split not a permutation of " + lit;
      }
    }
    if (count != a.size()) {
      ok = false;
      detail = "multiset cons over " + lit + " gave " + std::to_string(count) +
               " results";
    }

    // set: rest is always the original collection.
    Value st = s.eval_source("(match-all " + lit +
                             " (set integer) [<cons $x $rest> rest])");
    size_t set_count = 0;
    for (CollectionSeq items = st.as_collection().items; !items.is_empty();
         items = items.tail(), ++set_count) {
      if (int_items(items.head()->force()) != al) {
        ok = false;
        detail = "set rest differs from " + lit;
      }
    }
    if (set_count != a.size()) {
      ok = false;
      detail = "set cons over " + lit + " gave " + std::to_string(set_count) +
               " results";
    }

    // list: at most one result, and only the head split.
    Value l = s.eval_source("(match-all " + lit +
                            " (list integer) [<cons $x $rest> [x rest]])");
    auto items = l.as_collection().items;
    if (a.empty()) {
      if (!items.is_empty()) {
        ok = false;
        detail = "list cons over {} produced results";
      }
    } else {
      const TupleValue& t = items.head()->force().as_tuple();
      bool head_ok = t.items[0]->force().as_int() == al[0];
      std::vector<long long> rest(al.begin() + 1, al.end());
      if (!head_ok || int_items(t.items[1]->force()) != rest ||
          !items.tail().is_empty()) {
        ok = false;
        detail = "list cons over " + lit + " is not the head split";
      }
    }
  }
  report("4 cons result shapes for multiset / set / list", ok, detail);
}

void property_soundness() {
  Session s;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 200 && ok; ++i) {
    std::vector<int> a = random_ints(6, 5);
    std::string lit = collection_literal(a);
    Value m = s.eval_source("(match-all " + lit +
                            " (multiset integer) [<cons $x $rest> [x rest]])");
    for (CollectionSeq items = m.as_collection().items; !items.is_empty();
         items = items.tail()) {
      const TupleValue& t = items.head()->force().as_tuple();
      long long x = t.items[0]->force().as_int();
      std::vector<long long> rest = int_items(t.items[1]->force());
      std::vector<int> rest_int(rest.begin(), rest.end());
      // Substitute the binding back in as value patterns; it must re-match.
      std::string q = "(match-all " + lit + " (multiset integer) [<cons ," +
                      std::to_string(x) + " ," + collection_literal(rest_int) +
                      "> 1])";
      if (s.eval_source(q).as_collection().items.is_empty()) {
        ok = false;
        detail = q + " does not re-match";
      }
    }
  }
  report("4 enumerated bindings re-verify as value patterns", ok, detail);
}

void property_fairness() {
  Session s;
  Value result = s.eval_source(
      "(match-all nats (set integer) [<cons $m <cons $n _>> [m n]])");
  std::map<std::pair<long long, long long>, int> position;
  CollectionSeq items = result.as_collection().items;
  for (int ix = 1; ix <= 400; ++ix) {
    const TupleValue& t = items.head()->force().as_tuple();
    position[{t.items[0]->force().as_int(), t.items[1]->force().as_int()}] = ix;
    items = items.tail();
  }

  bool ok = true;
  std::string detail;
  // The pinned budget for small pairs,
  for (long long i = 1; i <= 5 && ok; ++i) {
    for (long long j = 1; j <= 5 && ok; ++j) {
      auto it = position.find({i, j});
      if (it == position.end() || it->second > (i + j) * (i + j)) {
        ok = false;
        detail = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  }
  // and then 200 sampled pairs further out, within the same budget.
  std::uniform_int_distribution<long long> coord(1, 9);
  for (int c = 0; c < 200 && ok; ++c) {
    long long i = coord(rng), j = coord(rng);
    if (i + j > 14) continue;
    auto it = position.find({i, j});
    if (it == position.end() || it->second > (i + j) * (i + j)) {
      ok = false;
      detail = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  }
  report("4 every pair within its (i+j)^2 fairness budget", ok, detail);
}

void property_left_to_right() {
  Session s;
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (int i = 0; i < 200 && ok; ++i) {
    std::vector<int> a = random_ints(6, 5);
    if (a.empty()) a.push_back(i % 6);
    ++checked;
    std::string q = "(match-all " + collection_literal(a) +
                    " (multiset integer) [<cons ,x <cons $x _>> x])";
    try {
      Value v = s.eval_source(q);
      (void)v.as_collection().items.is_empty();
      ok = false;
      detail = q + " did not raise";
    } catch (const EvalError& e) {
      if (std::string(e.what()) != "unbound variable 'x'") {
        ok = false;
        detail = std::string("raised: ") + e.what();
      }
    }
  }
  report("4 right-hand bindings are invisible to the left (" +
             std::to_string(checked) + " cases)",
         ok, detail);
}

void laziness() {
  {
    Session s;
    std::string got;
    try {
      got = run(s, "(take 3 (match-all nats (multiset integer)"
                   " [<cons $x _> (if (lt? x 4) x (car {}))]))");
    } catch (const Error& e) {
      got = std::string("error: ") + e.what();
    }
    report("5 take 3 never demands the poisoned 4th result", got == "{1 2 3}",
           "got " + got);
  }
  {
    Session s;
    Value v = s.eval_source(
        "(match-all {1 2 3 4 5} (multiset integer) [<cons $x $rest> [x rest]])");
    // Walk everything twice; memoization must make the second walk free.
    auto walk = [&] {
      for (CollectionSeq items = v.as_collection().items; !items.is_empty();
           items = items.tail()) {
        const TupleValue& t = items.head()->force().as_tuple();
        (void)t.items[0]->force();
        (void)int_items(t.items[1]->force());
      }
    };
    walk();
    std::uint64_t after_first = stats::cells_forced;
    walk();
    std::uint64_t after_second = stats::cells_forced;
    report("5 re-walking a stream forces no cell twice",
           after_second == after_first,
           std::to_string(after_second - after_first) + " extra forces");
  }
}

}  // namespace

int main() {
  golden_outputs();
  trace_fidelity();
  complexity();
  property_value_pattern();
  property_cons_shapes();
  property_soundness();
  property_fairness();
  property_left_to_right();
  laziness();

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
