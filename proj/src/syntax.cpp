#include "matcha/syntax.hpp"

#include <sstream>

namespace matcha {

namespace {

template <class T>
void join_sources(std::ostringstream& out, const std::vector<T>& items, bool leading_space) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (leading_space || i > 0) out << ' ';
    out << to_source(items[i]);
  }
}

void write_clause(std::ostringstream& out, const MatchClause& c) {
  out << '[' << to_source(c.pattern) << ' ' << to_source(c.body) << ']';
}

}  // namespace

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string to_source(const ExprPtr& e) {
  std::ostringstream out;
  std::visit(
      overloaded{
          [&](const VarExpr& v) { out << v.name; },
          [&](const ConstExpr& c) {
            std::visit(overloaded{[&](std::int64_t i) { out << i; },
                                  [&](bool b) { out << (b ? "#t" : "#f"); },
                                  [&](const std::string& s) { out << quote_string(s); }},
                       c.value);
          },
          [&](const LambdaExpr& l) {
            out << "(lambda [";
            for (std::size_t i = 0; i < l.params.size(); ++i) {
              if (i > 0) out << ' ';
              out << '$' << l.params[i];
            }
            out << "] " << to_source(l.body) << ')';
          },
          [&](const ApplyExpr& a) {
            out << '(' << to_source(a.fn);
            join_sources(out, a.args, true);
            out << ')';
          },
          [&](const TupleExpr& t) {
            out << '[';
            join_sources(out, t.items, false);
            out << ']';
          },
          [&](const CollectionExpr& c) {
            out << '{';
            join_sources(out, c.items, false);
            out << '}';
          },
          [&](const DataExpr& d) {
            out << '<' << d.name;
            join_sources(out, d.args, true);
            out << '>';
          },
          [&](const MatchAllExpr& m) {
            out << "(match-all " << to_source(m.target) << ' ' << to_source(m.matcher) << ' ';
            write_clause(out, m.clause);
            out << ')';
          },
          [&](const MatchExpr& m) {
            out << "(match " << to_source(m.target) << ' ' << to_source(m.matcher) << " {";
            for (std::size_t i = 0; i < m.clauses.size(); ++i) {
              if (i > 0) out << ' ';
              write_clause(out, m.clauses[i]);
            }
            out << "})";
          },
          [&](const SomethingExpr&) { out << "something"; },
          [&](const MatcherExpr& m) {
            out << "(matcher {";
            const MatcherClauses& cs = *m.clauses;
            for (std::size_t i = 0; i < cs.size(); ++i) {
              if (i > 0) out << ' ';
              out << '[' << to_source(cs[i].pp) << ' ' << to_source(cs[i].next_matcher) << " {";
              for (std::size_t j = 0; j < cs[i].data_clauses.size(); ++j) {
                if (j > 0) out << ' ';
                out << '[' << to_source(cs[i].data_clauses[j].dp) << ' '
                    << to_source(cs[i].data_clauses[j].next_target) << ']';
              }
              out << "}]";
            }
            out << "})";
          },
          [&](const IfExpr& i) {
            out << "(if " << to_source(i.cond) << ' ' << to_source(i.then_branch) << ' '
                << to_source(i.else_branch) << ')';
          },
      },
      e->node);
  return out.str();
}

std::string to_source(const PatternPtr& p) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const WildcardPattern&) { out << '_'; },
                 [&](const VarPattern& v) { out << '$' << v.name; },
                 [&](const ValuePattern& v) { out << ',' << to_source(v.expr); },
                 [&](const CtorPattern& c) {
                   out << '<' << c.name;
                   join_sources(out, c.args, true);
                   out << '>';
                 },
                 [&](const TuplePattern& t) {
                   out << '[';
                   join_sources(out, t.items, false);
                   out << ']';
                 },
             },
             p->node);
  return out.str();
}

std::string to_source(const PrimPatPtr& pp) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const PpHole&) { out << '$'; },
                 [&](const PpValue& v) { out << ",$" << v.name; },
                 [&](const PpCtor& c) {
                   out << '<' << c.name;
                   join_sources(out, c.args, true);
                   out << '>';
                 },
             },
             pp->node);
  return out.str();
}

std::string to_source(const PrimDataPtr& dp) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const DpVar& v) { out << '$' << v.name; },
                 [&](const DpWildcard&) { out << '_'; },
                 [&](const DpEmpty&) { out << "{}"; },
                 [&](const DpConsSplit& c) {
                   out << '{' << to_source(c.head) << " @" << to_source(c.rest) << '}';
                 },
                 [&](const DpCtor& c) {
                   out << '<' << c.name;
                   join_sources(out, c.args, true);
                   out << '>';
                 },
             },
             dp->node);
  return out.str();
}

std::string to_source(const TopForm& f) {
  return std::visit(overloaded{[&](const DefineForm& d) {
                                 return "(define $" + d.name + " " + to_source(d.expr) + ")";
                               },
                               [&](const ExprPtr& e) { return to_source(e); }},
                    f);
}

}  // namespace matcha
