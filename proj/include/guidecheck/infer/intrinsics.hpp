#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guidecheck/effect/reglang.hpp"
#include "guidecheck/infer/region.hpp"
#include "guidecheck/lang/ast.hpp"

namespace guidecheck {

/// One configured behavior of a library method: when the arguments match,
/// the call emits a word of `emits` and returns a value in `ret`, or (if
/// `throw_region` is set) emits a word of `throws` and throws.
struct IntrinsicRule {
  std::string cls;
  std::string method;
  std::vector<Region> args;
  Region ret;
  RegLang emits;
  std::optional<Region> throw_region;
  RegLang throws;
  int line = 0;

  /// Patterns match regions they are not disjoint from.
  bool matches(const std::vector<Region>& actual) const;
};

class Intrinsics {
 public:
  Intrinsics() = default;
  explicit Intrinsics(std::vector<IntrinsicRule> rules) : rules_(std::move(rules)) {}

  const std::vector<IntrinsicRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  /// Does the implementation of m declared in class `declaring` come from config?
  bool covers(const std::string& declaring, const std::string& m) const;
  std::vector<const IntrinsicRule*> rules_for(const std::string& declaring, const std::string& m) const;
  /// Is the body that a call of m on an object of class c runs an intrinsic?
  bool dispatches_to(const fj::Program& p, const std::string& c, const std::string& m) const;

 private:
  std::vector<IntrinsicRule> rules_;
};

/// Line format: `Class.method(argRegions) -> region emits <regex> [throws region <regex>]`
/// with `#` comments. Regexes are over `sigma`.
Intrinsics parse_intrinsics(const std::string& text, const std::string& origin, const fj::Program& p,
                            const Alphabet& sigma);
Intrinsics load_config(const std::string& path, const fj::Program& p, const Alphabet& sigma);

}  // namespace guidecheck
