#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define MATCHA_ISATTY _isatty
#define MATCHA_FILENO _fileno
#else
#include <unistd.h>
#define MATCHA_ISATTY isatty
#define MATCHA_FILENO fileno
#endif

#include "CLI11.hpp"
#include "matcha/engine.hpp"
#include "matcha/error.hpp"
#include "matcha/evaluator.hpp"
#include "matcha/reader.hpp"
#include "matcha/session.hpp"

namespace {

struct GlobalFlags {
  bool no_prelude = false;
  std::vector<std::string> prelude_sections;
  std::size_t max_results = 1000;
};

matcha::Session make_session(const GlobalFlags& flags) {
  matcha::SessionOptions opts;
  opts.with_prelude = !flags.no_prelude;
  opts.prelude_sections = flags.prelude_sections;
  return matcha::Session(opts);
}

void print_result(const matcha::Value& v, const GlobalFlags& flags) {
  matcha::PrintOptions opts;
  opts.max_collection_items = flags.max_results;
  std::cout << matcha::print_value(v, opts) << '\n';
}

int report_error(const matcha::Error& e) {
  std::cerr << "error: " << e.display() << '\n';
  return 1;
}

std::string read_stream(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int cmd_run(const std::string& path, const GlobalFlags& flags) {
  std::string source;
  if (path == "-") {
    source = read_stream(std::cin);
  } else {
    std::ifstream file(path);
    if (!file) {
      std::cerr << "error: cannot open '" << path << "'\n";
      return 1;
    }
    source = read_stream(file);
  }
  try {
    matcha::Session session = make_session(flags);
    for (const matcha::Value& v : session.run_source(source)) print_result(v, flags);
  } catch (const matcha::Error& e) {
    return report_error(e);
  }
  return 0;
}

int cmd_eval(const std::string& text, const GlobalFlags& flags) {
  try {
    matcha::Session session = make_session(flags);
    print_result(session.eval_source(text), flags);
  } catch (const matcha::Error& e) {
    return report_error(e);
  }
  return 0;
}

// Reads bracket-balanced forms, evaluating each as it completes. Diagnostics
// go to the error stream and never end the session.
int cmd_repl(const GlobalFlags& flags) {
  bool interactive = MATCHA_ISATTY(MATCHA_FILENO(stdin));
  matcha::Session session = make_session(flags);
  std::string buffer;
  std::string line;
  auto flush_buffer = [&]() {
    try {
      for (const matcha::Value& v : session.run_source(buffer)) print_result(v, flags);
    } catch (const matcha::Error& e) {
      std::cerr << "error: " << e.display() << '\n';
    }
    buffer.clear();
  };
  while (true) {
    if (interactive && buffer.empty()) {
      std::cout << "> " << std::flush;
    }
    if (!std::getline(std::cin, line)) break;
    buffer += line;
    buffer += '\n';
    std::vector<matcha::reader::Token> tokens;
    try {
      tokens = matcha::reader::tokenize(buffer);
    } catch (const matcha::ReaderError& e) {
      if (std::string(e.what()).find("unterminated string") != std::string::npos)
        continue;  // the closing quote may be on a later line
      std::cerr << "error: " << e.display() << '\n';
      buffer.clear();
      continue;
    }
    int depth = 0;
    for (const auto& t : tokens) {
      using matcha::reader::TokenKind;
      switch (t.kind) {
        case TokenKind::kLParen:
        case TokenKind::kLBracket:
        case TokenKind::kLBrace:
        case TokenKind::kLAngle:
          ++depth;
          break;
        case TokenKind::kRParen:
        case TokenKind::kRBracket:
        case TokenKind::kRBrace:
        case TokenKind::kRAngle:
          --depth;
          break;
        default:
          break;
      }
    }
    if (depth > 0) continue;  // form still open
    flush_buffer();
  }
  if (!buffer.empty()) flush_buffer();
  return 0;
}

int cmd_bench(int k, std::int64_t n, int reps) {
  matcha::BenchResult r = matcha::run_seq_bench(k, n, reps);
  std::printf("bench k=%d n=%lld calls=%llu ms=%.3f\n", r.k,
              static_cast<long long>(r.n), static_cast<unsigned long long>(r.calls),
              r.ms);
  return 0;
}

int cmd_trace(const std::string& text, int rounds, const GlobalFlags& flags) {
  try {
    matcha::ExprPtr expr = matcha::reader::parse_expression(text);
    const auto* ma = std::get_if<matcha::MatchAllExpr>(&expr->node);
    if (!ma) {
      std::cerr << "error: trace needs a match-all expression\n";
      return 2;
    }
    matcha::Session session = make_session(flags);
    matcha::DeferredPtr target = matcha::defer(ma->target, session.env());
    matcha::Value matcher = matcha::evaluate(ma->matcher, session.env());
    matcha::engine::trace(ma->clause.pattern, std::move(matcher), std::move(target),
                          session.env(), rounds, std::cout);
  } catch (const matcha::Error& e) {
    return report_error(e);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matcha: a pattern-matching-oriented language"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_flag("--no-prelude", flags.no_prelude, "Start with builtins only");
  app.add_option("--prelude-section", flags.prelude_sections,
                 "Load only the named prelude sections (repeatable)");
  app.add_option("--max-results", flags.max_results,
                 "Cap printed collections at this many items (default 1000)");
  std::string eval_text;
  app.add_option("-e,--eval", eval_text, "Evaluate one expression and print it");

  auto* run = app.add_subcommand("run", "Run a script ('-' for standard input)");
  std::string run_path;
  run->add_option("file", run_path, "Script path")->required();

  auto* repl = app.add_subcommand("repl", "Interactive session");

  auto* bench = app.add_subcommand("bench", "Sequential-pattern benchmark");
  int bench_k = 2;
  std::int64_t bench_n = 32;
  int bench_reps = 3;
  bench->add_option("--k", bench_k, "Pattern length (2, 3 or 4)")
      ->check(CLI::IsMember({2, 3, 4}));
  bench->add_option("--n", bench_n, "Collection size")->check(CLI::Range(4, 1 << 20));
  bench->add_option("--reps", bench_reps, "Repetitions")->check(CLI::Range(1, 100));

  auto* trace = app.add_subcommand("trace", "Print the matching machine's rounds");
  std::string trace_text;
  int trace_rounds = 8;
  trace->add_option("-e,--eval", trace_text, "match-all expression")->required();
  trace->add_option("--rounds", trace_rounds, "Rounds to show")
      ->check(CLI::Range(0, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(run_path, flags);
    if (*repl) return cmd_repl(flags);
    if (*bench) return cmd_bench(bench_k, bench_n, bench_reps);
    if (*trace) return cmd_trace(trace_text, trace_rounds, flags);
    if (!eval_text.empty()) return cmd_eval(eval_text, flags);
  } catch (const matcha::Error& e) {
    return report_error(e);
  }

  std::cerr << app.help();
  return 2;
}
