#pragma once

#include <stdexcept>
#include <string>

namespace guidecheck {

struct SourcePos {
  std::string file;
  int line = 0;
  int col = 0;

  std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
  }
};

/// Base class for every error caused by bad user input (files, programs,
/// configuration). The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const SourcePos& pos, const std::string& msg)
      : InputError(pos.str() + ": " + msg), pos_(pos) {}
  const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Misuse of an API, e.g. combining elements of different automata.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace guidecheck
