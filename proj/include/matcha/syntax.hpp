#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "matcha/error.hpp"

namespace matcha {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;
struct PrimPat;
using PrimPatPtr = std::shared_ptr<const PrimPat>;
struct PrimData;
using PrimDataPtr = std::shared_ptr<const PrimData>;

// ---- patterns ------------------------------------------------------------

struct WildcardPattern {};
struct VarPattern {
  std::string name;
};
struct ValuePattern {
  ExprPtr expr;
};
struct CtorPattern {
  std::string name;  // lowercase
  std::vector<PatternPtr> args;
};
struct TuplePattern {
  std::vector<PatternPtr> items;
};

struct Pattern {
  std::variant<WildcardPattern, VarPattern, ValuePattern, CtorPattern, TuplePattern> node;
  SourcePos pos;
};

// ---- primitive-pattern patterns (matcher clause heads) --------------------

struct PpHole {};
struct PpValue {
  std::string name;  // the variable bound to the evaluated value pattern
};
struct PpCtor {
  std::string name;  // lowercase
  std::vector<PrimPatPtr> args;
};

struct PrimPat {
  std::variant<PpHole, PpValue, PpCtor> node;
  SourcePos pos;
};

// ---- primitive-data patterns ----------------------------------------------

struct DpVar {
  std::string name;
};
struct DpWildcard {};
struct DpEmpty {};
struct DpConsSplit {
  PrimDataPtr head;
  PrimDataPtr rest;
};
struct DpCtor {
  std::string name;  // uppercase
  std::vector<PrimDataPtr> args;
};

struct PrimData {
  std::variant<DpVar, DpWildcard, DpEmpty, DpConsSplit, DpCtor> node;
  SourcePos pos;
};

// ---- matcher clauses -------------------------------------------------------

struct DataClause {
  PrimDataPtr dp;
  ExprPtr next_target;
};

struct MatcherClause {
  PrimPatPtr pp;
  ExprPtr next_matcher;
  std::vector<DataClause> data_clauses;
};

using MatcherClauses = std::vector<MatcherClause>;
using MatcherClausesPtr = std::shared_ptr<const MatcherClauses>;

// ---- expressions ------------------------------------------------------------

struct VarExpr {
  std::string name;
};
struct ConstExpr {
  std::variant<std::int64_t, bool, std::string> value;
};
struct LambdaExpr {
  std::vector<std::string> params;
  ExprPtr body;
};
struct ApplyExpr {
  ExprPtr fn;
  std::vector<ExprPtr> args;
};
struct TupleExpr {
  std::vector<ExprPtr> items;
};
struct CollectionExpr {
  std::vector<ExprPtr> items;
};
struct DataExpr {
  std::string name;  // uppercase
  std::vector<ExprPtr> args;
};
struct MatchClause {
  PatternPtr pattern;
  ExprPtr body;
};
struct MatchAllExpr {
  ExprPtr target;
  ExprPtr matcher;
  MatchClause clause;
};
struct MatchExpr {
  ExprPtr target;
  ExprPtr matcher;
  std::vector<MatchClause> clauses;
};
struct SomethingExpr {};
struct MatcherExpr {
  MatcherClausesPtr clauses;
};
struct IfExpr {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

struct Expr {
  std::variant<VarExpr, ConstExpr, LambdaExpr, ApplyExpr, TupleExpr, CollectionExpr, DataExpr,
               MatchAllExpr, MatchExpr, SomethingExpr, MatcherExpr, IfExpr>
      node;
  SourcePos pos;
};

// ---- top-level forms ---------------------------------------------------------

struct DefineForm {
  SourcePos pos;
  std::string name;  // without the leading '$'
  ExprPtr expr;
};

using TopForm = std::variant<DefineForm, ExprPtr>;

// ---- source printers ----------------------------------------------------------

std::string to_source(const ExprPtr& e);
std::string to_source(const PatternPtr& p);
std::string to_source(const PrimPatPtr& pp);
std::string to_source(const PrimDataPtr& dp);
std::string to_source(const TopForm& f);
std::string quote_string(const std::string& s);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace matcha
