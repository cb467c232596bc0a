#pragma once

#include <stdexcept>
#include <string>

namespace matcha {

struct SourcePos {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

inline std::string to_string(const SourcePos& p) {
  return std::to_string(p.line) + ":" + std::to_string(p.column);
}

// Base for reader and runtime diagnostics. what() is the bare message;
// display() appends the source position when one is known.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string msg, SourcePos pos = {})
      : std::runtime_error(std::move(msg)), pos_(pos) {}

  const SourcePos& pos() const { return pos_; }

  std::string display() const {
    if (pos_.known()) return std::string(what()) + " at " + to_string(pos_);
    return what();
  }

 private:
  SourcePos pos_;
};

class ReaderError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace matcha
