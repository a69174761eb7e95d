#pragma once

#include <string>
#include <vector>

#include "guidecheck/lang/ast.hpp"

namespace guidecheck::fj {

struct TypeError {
  SourcePos pos;
  std::string message;
  std::string str() const { return pos.str() + ": " + message; }
};

/// Standard FJ well-typedness extended with let, if, emit, throw and try.
/// Returns an empty list iff the program is well-typed.
std::vector<TypeError> fj_typecheck(const Program& p);

}  // namespace guidecheck::fj
