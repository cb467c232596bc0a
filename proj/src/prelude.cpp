#include "matcha/prelude.hpp"

#include <algorithm>

#include "matcha/error.hpp"
#include "matcha/evaluator.hpp"
#include "matcha/reader.hpp"

namespace matcha {

namespace {

const char* kArith = R"(
(define $mod (lambda [$n $d] (if (lt? n d) n (mod (- n d) d))))
(define $divides? (lambda [$d $n] (eq? (mod n d) 0)))
(define $has-factor-from?
  (lambda [$n $d]
    (if (lt? n (* d d))
        #f
        (if (divides? d n) #t (has-factor-from? n (+ d 1))))))
(define $prime? (lambda [$n] (if (lt? n 2) #f (not (has-factor-from? n 2)))))
)";

const char* kStreams = R"(
(define $nats-from (lambda [$n] (append {n} (nats-from (+ n 1)))))
(define $nats (nats-from 1))
(define $filter
  (lambda [$p $xs]
    (if (empty? xs)
        {}
        (if (p (car xs))
            (append {(car xs)} (filter p (cdr xs)))
            (filter p (cdr xs))))))
(define $nth (lambda [$k $xs] (if (eq? k 1) (car xs) (nth (- k 1) (cdr xs)))))
(define $splits-from
  (lambda [$pre $xs]
    (append {[pre xs]}
            (if (empty? xs)
                {}
                (splits-from (append pre {(car xs)}) (cdr xs))))))
(define $splits (lambda [$xs] (splits-from {} xs)))
)";

const char* kIntegerMatcher = R"(
(define $integer
  (matcher {[,$n [] {[$tgt (if (eq? tgt n) {[]} {})]}]
            [<lt ,$n> [] {[$tgt (if (lt? tgt n) {[]} {})]}]
            [$ [something] {[$tgt {tgt}]}]}))
)";

const char* kBoolMatcher = R"(
(define $bool
  (matcher {[,$b [] {[$tgt (if (eq? tgt b) {[]} {})]}]
            [$ [something] {[$tgt {tgt}]}]}))
)";

const char* kUnorderedPair = R"(
(define $unordered-pair
  (lambda [$a]
    (matcher {[<pair $ $> [a a] {[<Pair $x $y> {[x y] [y x]}]}]
              [$ [something] {[$tgt {tgt}]}]})))
)";

const char* kListMatcher = R"(
(define $list
  (lambda [$a]
    (matcher
      {[<nil> [] {[{} {[]}] [_ {}]}]
       [<cons $ $> [a (list a)] {[{$x @$xs} {[x xs]}] [_ {}]}]
       [<join $ $> [(list a) (list a)] {[$tgt (splits tgt)]}]
       [,$val []
        {[$tgt (match [val tgt] [(list a) (list a)]
                 {[[<nil> <nil>] {[]}]
                  [[<cons $x $xs> <cons ,x ,xs>] {[]}]
                  [[_ _] {}]})]}]
       [$ [something] {[$tgt {tgt}]}]})))
)";

const char* kMultisetMatcher = R"(
(define $multiset
  (lambda [$a]
    (matcher
      {[<nil> [] {[{} {[]}] [_ {}]}]
       [<cons $ $> [a (multiset a)]
        {[$tgt (match-all tgt (list a)
                 [<join $hs <cons $x $ts>>
                  [x (append hs ts)]])]}]
       [,$val []
        {[$tgt (match [val tgt] [(list a) (multiset a)]
                 {[[<nil> <nil>] {[]}]
                  [[<cons $x $xs> <cons ,x ,xs>] {[]}]
                  [[_ _] {}]})]}]
       [$ [something] {[$tgt {tgt}]}]})))
)";

const char* kSetMatcher = R"(
(define $set
  (lambda [$a]
    (matcher
      {[<cons $ $> [a (set a)]
        {[$tgt (match-all tgt (list a)
                 [<join _ <cons $x _>> [x tgt]])]}]
       [$ [something] {[$tgt {tgt}]}]})))
)";

const char* kPrimes = R"(
(define $primes (filter prime? (nats-from 2)))
(define $twin-primes
  (match-all primes (list integer)
    [<join _ <cons $p <cons ,(+ p 2) _>>> [p (+ p 2)]]))
)";

const char* kFunctions = R"(
(define $member?/m
  (lambda [$m $x $xs]
    (match xs (list m) {[<join _ <cons ,x _>> #t] [_ #f]})))
)";

}  // namespace

const std::vector<PreludeSection>& prelude_sections() {
  static const std::vector<PreludeSection> sections = {
      {"arith", kArith},
      {"streams", kStreams},
      {"integer-matcher", kIntegerMatcher},
      {"bool-matcher", kBoolMatcher},
      {"unordered-pair", kUnorderedPair},
      {"list-matcher", kListMatcher},
      {"multiset-matcher", kMultisetMatcher},
      {"set-matcher", kSetMatcher},
      {"primes", kPrimes},
      {"functions", kFunctions},
  };
  return sections;
}

namespace {

void load_section(const EnvPtr& env, const PreludeSection& section) {
  try {
    for (const TopForm& form : reader::parse_program(section.source)) {
      eval_top(form, env);
    }
  } catch (const Error& e) {
    throw EvalError("prelude section '" + section.name + "': " + e.what());
  }
}

}  // namespace

void load_prelude(const EnvPtr& env) {
  for (const PreludeSection& s : prelude_sections()) load_section(env, s);
}

void load_prelude_sections(const EnvPtr& env, const std::vector<std::string>& names) {
  for (const std::string& n : names) {
    bool known = std::any_of(prelude_sections().begin(), prelude_sections().end(),
                             [&](const PreludeSection& s) { return s.name == n; });
    if (!known) throw EvalError("unknown prelude section '" + n + "'");
  }
  for (const PreludeSection& s : prelude_sections()) {
    if (std::find(names.begin(), names.end(), s.name) != names.end()) {
      load_section(env, s);
    }
  }
}

}  // namespace matcha
