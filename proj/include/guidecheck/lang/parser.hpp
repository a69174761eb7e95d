#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guidecheck/lang/ast.hpp"

namespace guidecheck::fj {

struct SourceFile {
  std::string name;
  std::string text;
};

/// Parses and desugars the surface language. When `alphabet` is given every
/// emitted event must belong to it; otherwise the alphabet is collected from
/// the program in order of first occurrence.
Program parse_program(const std::vector<SourceFile>& files,
                      const std::optional<Alphabet>& alphabet = std::nullopt);
Program parse_program(const std::string& text, const std::string& file = "<input>",
                      const std::optional<Alphabet>& alphabet = std::nullopt);

/// Prints a program in a surface form that parses back to an equal Program.
std::string print_program(const Program& p);
std::string print_expr(const ExprPtr& e);

}  // namespace guidecheck::fj
