#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "matcha/syntax.hpp"

namespace matcha::reader {

enum class TokenKind {
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLBrace,
  kRBrace,
  kLAngle,
  kRAngle,
  kDollar,
  kComma,
  kUnderscore,
  kAt,
  kInt,
  kString,
  kBool,
  kIdent,
};

struct Token {
  TokenKind kind;
  std::string text;  // identifier spelling / string contents
  std::int64_t int_value = 0;
  bool bool_value = false;
  SourcePos pos;
};

const char* token_kind_name(TokenKind k);

std::vector<Token> tokenize(std::string_view source);

// A program is a sequence of top-level forms: defines and expressions.
std::vector<TopForm> parse_program(std::string_view source);

// Conveniences for tests and the CLI: exactly one expression / pattern.
ExprPtr parse_expression(std::string_view source);
PatternPtr parse_pattern(std::string_view source);

}  // namespace matcha::reader
