#include "matcha/reader.hpp"

#include <cctype>
#include <cstdlib>
#include <memory>
#include <optional>
#include <set>

#include "matcha/error.hpp"

namespace matcha::reader {

namespace {

bool is_ident_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '+': case '-': case '*': case '/': case '?': case '!':
    case '=': case '_': case '.': case '%': case '&': case '~':
    case '^': case ':': case '\'':
      return true;
    default:
      return false;
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      if (at_end()) break;
      out.push_back(next_token());
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  SourcePos here() const { return SourcePos{line_, column_}; }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token simple(TokenKind kind, SourcePos pos) {
    Token t;
    t.kind = kind;
    t.pos = pos;
    return t;
  }

  Token next_token() {
    SourcePos pos = here();
    char c = peek();
    switch (c) {
      case '(': advance(); return simple(TokenKind::kLParen, pos);
      case ')': advance(); return simple(TokenKind::kRParen, pos);
      case '[': advance(); return simple(TokenKind::kLBracket, pos);
      case ']': advance(); return simple(TokenKind::kRBracket, pos);
      case '{': advance(); return simple(TokenKind::kLBrace, pos);
      case '}': advance(); return simple(TokenKind::kRBrace, pos);
      case '<': advance(); return simple(TokenKind::kLAngle, pos);
      case '>': advance(); return simple(TokenKind::kRAngle, pos);
      case '$': advance(); return simple(TokenKind::kDollar, pos);
      case ',': advance(); return simple(TokenKind::kComma, pos);
      case '@': advance(); return simple(TokenKind::kAt, pos);
      case '"': return string_token(pos);
      case '#': return hash_token(pos);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number_token(pos);
    }
    if (is_ident_char(c)) return ident_token(pos);
    throw ReaderError("unexpected character '" + std::string(1, c) + "'", pos);
  }

  Token string_token(SourcePos pos) {
    advance();  // opening quote
    std::string text;
    for (;;) {
      if (at_end()) throw ReaderError("unterminated string", pos);
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) throw ReaderError("unterminated string", pos);
        char e = advance();
        switch (e) {
          case '"': text.push_back('"'); break;
          case '\\': text.push_back('\\'); break;
          case 'n': text.push_back('\n'); break;
          case 't': text.push_back('\t'); break;
          default:
            throw ReaderError("unknown escape '\\" + std::string(1, e) + "'", pos);
        }
      } else {
        text.push_back(c);
      }
    }
    Token t;
    t.kind = TokenKind::kString;
    t.text = std::move(text);
    t.pos = pos;
    return t;
  }

  Token hash_token(SourcePos pos) {
    advance();  // '#'
    std::string rest;
    while (!at_end() && is_ident_char(peek())) rest.push_back(advance());
    if (rest != "t" && rest != "f")
      throw ReaderError("unknown literal '#" + rest + "'", pos);
    Token t;
    t.kind = TokenKind::kBool;
    t.bool_value = (rest == "t");
    t.pos = pos;
    return t;
  }

  Token number_token(SourcePos pos) {
    std::string digits;
    if (peek() == '-' || peek() == '+') digits.push_back(advance());
    while (!at_end() && is_ident_char(peek())) digits.push_back(advance());
    for (std::size_t i = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
         i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i])))
        throw ReaderError("malformed number '" + digits + "'", pos);
    }
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(digits.c_str(), &end, 10);
    if (errno == ERANGE || end != digits.c_str() + digits.size())
      throw ReaderError("integer out of range '" + digits + "'", pos);
    Token t;
    t.kind = TokenKind::kInt;
    t.int_value = static_cast<std::int64_t>(v);
    t.pos = pos;
    return t;
  }

  Token ident_token(SourcePos pos) {
    std::string name;
    while (!at_end() && is_ident_char(peek())) name.push_back(advance());
    Token t;
    t.pos = pos;
    if (name == "_") {
      t.kind = TokenKind::kUnderscore;
      return t;
    }
    t.kind = TokenKind::kIdent;
    t.text = std::move(name);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool starts_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<TopForm> program() {
    std::vector<TopForm> forms;
    while (!at_end()) forms.push_back(top_form());
    return forms;
  }

  ExprPtr single_expression() {
    ExprPtr e = expression();
    if (!at_end())
      throw ReaderError("trailing input after expression", peek().pos);
    return e;
  }

  PatternPtr single_pattern() {
    PatternPtr p = pattern();
    if (!at_end())
      throw ReaderError("trailing input after pattern", peek().pos);
    return p;
  }

 private:
  bool at_end() const { return index_ >= tokens_.size(); }

  const Token& peek(std::size_t ahead = 0) const {
    static const Token eof{TokenKind::kIdent, "<eof>", 0, false, SourcePos{}};
    return index_ + ahead < tokens_.size() ? tokens_[index_ + ahead] : eof;
  }

  SourcePos here() const {
    if (!at_end()) return peek().pos;
    return tokens_.empty() ? SourcePos{1, 1} : tokens_.back().pos;
  }

  const Token& advance() {
    if (at_end()) throw ReaderError("unexpected end of input", here());
    return tokens_[index_++];
  }

  const Token& expect(TokenKind kind, const char* what) {
    if (at_end())
      throw ReaderError(std::string("expected ") + what + ", got end of input", here());
    const Token& t = peek();
    if (t.kind != kind)
      throw ReaderError(std::string("expected ") + what, t.pos);
    return advance();
  }

  bool check(TokenKind kind) const { return !at_end() && peek().kind == kind; }

  // --- top level ---

  TopForm top_form() {
    if (check(TokenKind::kLParen) && peek(1).kind == TokenKind::kIdent &&
        peek(1).text == "define") {
      return define_form();
    }
    return expression();
  }

  DefineForm define_form() {
    SourcePos pos = peek().pos;
    advance();  // (
    advance();  // define
    expect(TokenKind::kDollar, "'$' before defined name");
    const Token& name = expect(TokenKind::kIdent, "name after '$'");
    ExprPtr body = expression();
    expect(TokenKind::kRParen, "')' closing define");
    return DefineForm{pos, name.text, std::move(body)};
  }

  // --- expressions ---

  ExprPtr expression() {
    if (at_end()) throw ReaderError("expected expression, got end of input", here());
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kInt: {
        advance();
        auto e = std::make_shared<Expr>(ConstExpr{t.int_value});
        e->pos = t.pos;
        return e;
      }
      case TokenKind::kBool: {
        advance();
        auto e = std::make_shared<Expr>(ConstExpr{t.bool_value});
        e->pos = t.pos;
        return e;
      }
      case TokenKind::kString: {
        advance();
        auto e = std::make_shared<Expr>(ConstExpr{t.text});
        e->pos = t.pos;
        return e;
      }
      case TokenKind::kIdent: {
        if (t.text == "define")
          throw ReaderError("define is only allowed at top level", t.pos);
        advance();
        if (t.text == "something") {
          auto e = std::make_shared<Expr>(SomethingExpr{});
          e->pos = t.pos;
          return e;
        }
        auto e = std::make_shared<Expr>(VarExpr{t.text});
        e->pos = t.pos;
        return e;
      }
      case TokenKind::kLParen:
        return form();
      case TokenKind::kLBracket:
        return tuple_expr();
      case TokenKind::kLBrace:
        return collection_expr();
      case TokenKind::kLAngle:
        return data_expr();
      case TokenKind::kDollar:
        throw ReaderError("'$' is not valid in an expression", t.pos);
      case TokenKind::kComma:
        throw ReaderError("',' is not valid in an expression", t.pos);
      case TokenKind::kUnderscore:
        throw ReaderError("'_' is not valid in an expression", t.pos);
      case TokenKind::kAt:
        throw ReaderError("'@' is only valid inside a matcher data pattern", t.pos);
      default:
        throw ReaderError("expected expression", t.pos);
    }
  }

  ExprPtr form() {
    SourcePos pos = peek().pos;
    advance();  // (
    if (check(TokenKind::kIdent)) {
      const std::string& head = peek().text;
      if (head == "lambda") return lambda_rest(pos);
      if (head == "if") return if_rest(pos);
      if (head == "match-all") return match_all_rest(pos);
      if (head == "match") return match_rest(pos);
      if (head == "matcher") return matcher_rest(pos);
      if (head == "define")
        throw ReaderError("define is only allowed at top level", peek().pos);
    }
    // application
    ExprPtr fn = expression();
    std::vector<ExprPtr> args;
    while (!check(TokenKind::kRParen)) args.push_back(expression());
    expect(TokenKind::kRParen, "')' closing application");
    auto e = std::make_shared<Expr>(ApplyExpr{std::move(fn), std::move(args)});
    e->pos = pos;
    return e;
  }

  ExprPtr lambda_rest(SourcePos pos) {
    advance();  // lambda
    expect(TokenKind::kLBracket, "'[' opening parameter list");
    std::vector<std::string> params;
    std::set<std::string> seen;
    while (!check(TokenKind::kRBracket)) {
      expect(TokenKind::kDollar, "'$' before parameter name");
      const Token& name = expect(TokenKind::kIdent, "parameter name");
      if (!seen.insert(name.text).second)
        throw ReaderError("duplicate parameter '$" + name.text + "'", name.pos);
      params.push_back(name.text);
    }
    expect(TokenKind::kRBracket, "']' closing parameter list");
    ExprPtr body = expression();
    expect(TokenKind::kRParen, "')' closing lambda");
    auto e = std::make_shared<Expr>(LambdaExpr{std::move(params), std::move(body)});
    e->pos = pos;
    return e;
  }

  ExprPtr if_rest(SourcePos pos) {
    advance();  // if
    ExprPtr c = expression();
    ExprPtr t = expression();
    ExprPtr f = expression();
    expect(TokenKind::kRParen, "')' closing if");
    auto e = std::make_shared<Expr>(IfExpr{std::move(c), std::move(t), std::move(f)});
    e->pos = pos;
    return e;
  }

  MatchClause match_clause() {
    expect(TokenKind::kLBracket, "'[' opening match clause");
    PatternPtr p = pattern();
    ExprPtr body = expression();
    expect(TokenKind::kRBracket, "']' closing match clause");
    return MatchClause{std::move(p), std::move(body)};
  }

  ExprPtr match_all_rest(SourcePos pos) {
    advance();  // match-all
    ExprPtr target = expression();
    ExprPtr matcher = expression();
    MatchClause clause = match_clause();
    expect(TokenKind::kRParen, "')' closing match-all");
    auto e = std::make_shared<Expr>(
        MatchAllExpr{std::move(target), std::move(matcher), std::move(clause)});
    e->pos = pos;
    return e;
  }

  ExprPtr match_rest(SourcePos pos) {
    advance();  // match
    ExprPtr target = expression();
    ExprPtr matcher = expression();
    expect(TokenKind::kLBrace, "'{' opening match clauses");
    std::vector<MatchClause> clauses;
    while (!check(TokenKind::kRBrace)) clauses.push_back(match_clause());
    expect(TokenKind::kRBrace, "'}' closing match clauses");
    if (clauses.empty())
      throw ReaderError("match needs at least one clause", pos);
    expect(TokenKind::kRParen, "')' closing match");
    auto e = std::make_shared<Expr>(
        MatchExpr{std::move(target), std::move(matcher), std::move(clauses)});
    e->pos = pos;
    return e;
  }

  ExprPtr matcher_rest(SourcePos pos) {
    advance();  // matcher
    expect(TokenKind::kLBrace, "'{' opening matcher clauses");
    auto clauses = std::make_shared<std::vector<MatcherClause>>();
    while (!check(TokenKind::kRBrace)) clauses->push_back(matcher_clause());
    expect(TokenKind::kRBrace, "'}' closing matcher clauses");
    expect(TokenKind::kRParen, "')' closing matcher");
    auto e = std::make_shared<Expr>(MatcherExpr{
        std::shared_ptr<const std::vector<MatcherClause>>(std::move(clauses))});
    e->pos = pos;
    return e;
  }

  ExprPtr tuple_expr() {
    SourcePos pos = peek().pos;
    advance();  // [
    std::vector<ExprPtr> items;
    while (!check(TokenKind::kRBracket)) items.push_back(expression());
    expect(TokenKind::kRBracket, "']' closing tuple");
    auto e = std::make_shared<Expr>(TupleExpr{std::move(items)});
    e->pos = pos;
    return e;
  }

  ExprPtr collection_expr() {
    SourcePos pos = peek().pos;
    advance();  // {
    std::vector<ExprPtr> items;
    while (!check(TokenKind::kRBrace)) items.push_back(expression());
    expect(TokenKind::kRBrace, "'}' closing collection");
    auto e = std::make_shared<Expr>(CollectionExpr{std::move(items)});
    e->pos = pos;
    return e;
  }

  ExprPtr data_expr() {
    SourcePos pos = peek().pos;
    advance();  // <
    const Token& name = expect(TokenKind::kIdent, "constructor name");
    if (!starts_upper(name.text))
      throw ReaderError("data constructor must start uppercase: '" + name.text + "'",
                        name.pos);
    std::vector<ExprPtr> args;
    while (!check(TokenKind::kRAngle)) args.push_back(expression());
    expect(TokenKind::kRAngle, "'>' closing constructor");
    auto e = std::make_shared<Expr>(DataExpr{name.text, std::move(args)});
    e->pos = pos;
    return e;
  }

  // --- patterns ---

  PatternPtr pattern() {
    if (at_end()) throw ReaderError("expected pattern, got end of input", here());
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kUnderscore: {
        advance();
        auto p = std::make_shared<Pattern>(WildcardPattern{});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kDollar: {
        advance();
        const Token& name = expect(TokenKind::kIdent, "variable name after '$'");
        auto p = std::make_shared<Pattern>(VarPattern{name.text});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kComma: {
        advance();
        ExprPtr e = expression();
        auto p = std::make_shared<Pattern>(ValuePattern{std::move(e)});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kLAngle: {
        advance();
        const Token& name = expect(TokenKind::kIdent, "pattern constructor name");
        if (starts_upper(name.text))
          throw ReaderError(
              "pattern constructor must start lowercase: '" + name.text + "'",
              name.pos);
        std::vector<PatternPtr> args;
        while (!check(TokenKind::kRAngle)) args.push_back(pattern());
        expect(TokenKind::kRAngle, "'>' closing pattern constructor");
        auto p = std::make_shared<Pattern>(CtorPattern{name.text, std::move(args)});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kLBracket: {
        advance();
        std::vector<PatternPtr> items;
        while (!check(TokenKind::kRBracket)) items.push_back(pattern());
        expect(TokenKind::kRBracket, "']' closing tuple pattern");
        auto p = std::make_shared<Pattern>(TuplePattern{std::move(items)});
        p->pos = t.pos;
        return p;
      }
      default:
        throw ReaderError("expected pattern", t.pos);
    }
  }

  // --- matcher clauses ---

  MatcherClause matcher_clause() {
    expect(TokenKind::kLBracket, "'[' opening matcher clause");
    PrimPatPtr pp = prim_pattern();
    ExprPtr next_matcher = expression();
    expect(TokenKind::kLBrace, "'{' opening data clauses");
    std::vector<DataClause> data_clauses;
    while (!check(TokenKind::kRBrace)) data_clauses.push_back(data_clause());
    expect(TokenKind::kRBrace, "'}' closing data clauses");
    expect(TokenKind::kRBracket, "']' closing matcher clause");
    return MatcherClause{std::move(pp), std::move(next_matcher),
                         std::move(data_clauses)};
  }

  PrimPatPtr prim_pattern() {
    if (at_end())
      throw ReaderError("expected primitive pattern, got end of input", here());
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kDollar: {
        advance();
        // "$x" (no space) would name the hole; holes are anonymous here.
        if (check(TokenKind::kIdent) && peek().pos.line == t.pos.line &&
            peek().pos.column == t.pos.column + 1)
          throw ReaderError("pattern holes are anonymous; write '$'", peek().pos);
        auto p = std::make_shared<PrimPat>(PpHole{});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kComma: {
        advance();
        expect(TokenKind::kDollar, "'$' after ',' in primitive pattern");
        const Token& name = expect(TokenKind::kIdent, "name after ',$'");
        auto p = std::make_shared<PrimPat>(PpValue{name.text});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kLAngle: {
        advance();
        const Token& name = expect(TokenKind::kIdent, "pattern constructor name");
        if (starts_upper(name.text))
          throw ReaderError(
              "pattern constructor must start lowercase: '" + name.text + "'",
              name.pos);
        std::vector<PrimPatPtr> args;
        while (!check(TokenKind::kRAngle)) args.push_back(prim_pattern());
        expect(TokenKind::kRAngle, "'>' closing pattern constructor");
        auto p = std::make_shared<PrimPat>(PpCtor{name.text, std::move(args)});
        p->pos = t.pos;
        return p;
      }
      default:
        throw ReaderError("expected primitive pattern", t.pos);
    }
  }

  PrimDataPtr data_pattern() {
    if (at_end())
      throw ReaderError("expected data pattern, got end of input", here());
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kDollar: {
        advance();
        const Token& name = expect(TokenKind::kIdent, "variable name after '$'");
        auto p = std::make_shared<PrimData>(DpVar{name.text});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kUnderscore: {
        advance();
        auto p = std::make_shared<PrimData>(DpWildcard{});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kLBrace: {
        advance();
        if (check(TokenKind::kRBrace)) {
          advance();
          auto p = std::make_shared<PrimData>(DpEmpty{});
          p->pos = t.pos;
          return p;
        }
        PrimDataPtr head = data_pattern();
        expect(TokenKind::kAt, "'@' before rest in data pattern");
        PrimDataPtr rest = data_pattern();
        expect(TokenKind::kRBrace, "'}' closing data pattern");
        auto p = std::make_shared<PrimData>(DpConsSplit{std::move(head), std::move(rest)});
        p->pos = t.pos;
        return p;
      }
      case TokenKind::kLAngle: {
        advance();
        const Token& name = expect(TokenKind::kIdent, "constructor name");
        if (!starts_upper(name.text))
          throw ReaderError(
              "data constructor must start uppercase: '" + name.text + "'", name.pos);
        std::vector<PrimDataPtr> args;
        while (!check(TokenKind::kRAngle)) args.push_back(data_pattern());
        expect(TokenKind::kRAngle, "'>' closing constructor");
        auto p = std::make_shared<PrimData>(DpCtor{name.text, std::move(args)});
        p->pos = t.pos;
        return p;
      }
      default:
        throw ReaderError("expected data pattern", t.pos);
    }
  }

  DataClause data_clause() {
    expect(TokenKind::kLBracket, "'[' opening data clause");
    PrimDataPtr dp = data_pattern();
    ExprPtr next_target = expression();
    expect(TokenKind::kRBracket, "']' closing data clause");
    return DataClause{std::move(dp), std::move(next_target)};
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::kLParen: return "(";
    case TokenKind::kRParen: return ")";
    case TokenKind::kLBracket: return "[";
    case TokenKind::kRBracket: return "]";
    case TokenKind::kLBrace: return "{";
    case TokenKind::kRBrace: return "}";
    case TokenKind::kLAngle: return "<";
    case TokenKind::kRAngle: return ">";
    case TokenKind::kDollar: return "$";
    case TokenKind::kComma: return ",";
    case TokenKind::kUnderscore: return "_";
    case TokenKind::kAt: return "@";
    case TokenKind::kInt: return "int";
    case TokenKind::kString: return "string";
    case TokenKind::kBool: return "bool";
    case TokenKind::kIdent: return "identifier";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

std::vector<TopForm> parse_program(std::string_view source) {
  return Parser(tokenize(source)).program();
}

ExprPtr parse_expression(std::string_view source) {
  return Parser(tokenize(source)).single_expression();
}

PatternPtr parse_pattern(std::string_view source) {
  return Parser(tokenize(source)).single_pattern();
}

}  // namespace matcha::reader
