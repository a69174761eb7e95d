#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "guidecheck/lang/ast.hpp"

namespace guidecheck {

/// Provenance abstraction of a value.
struct Region {
  enum Kind { Null, CreatedAt, Unknown };
  Kind kind = Unknown;
  std::string label;  // only for CreatedAt

  static Region null() { return {Null, ""}; }
  static Region unknown() { return {Unknown, ""}; }
  static Region created_at(std::string l) { return {CreatedAt, std::move(l)}; }

  std::string str() const;

  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region&, const Region&) = default;
};

/// Parses `Null`, `Unknown` or `CreatedAt(label)`.
Region parse_region(const std::string& text);

bool disjoint(const Region& a, const Region& b);

/// Method signature (C, r, m, s̄).
struct Sig {
  std::string cls;
  Region recv;
  std::string method;
  std::vector<Region> args;

  std::string str() const;

  friend bool operator==(const Sig&, const Sig&) = default;
  friend auto operator<=>(const Sig&, const Sig&) = default;
};

/// Cls(r) for every region of a program, and the region universe.
class RegionMeta {
 public:
  RegionMeta() = default;
  explicit RegionMeta(const fj::Program& p);

  /// Null, then CreatedAt for every label in order, then Unknown.
  const std::vector<Region>& regions() const { return regions_; }
  const std::set<std::string>& cls(const Region& r) const;
  bool in_cls(const std::string& c, const Region& r) const { return cls(r).count(c) != 0; }

 private:
  std::vector<Region> regions_;
  std::map<Region, std::set<std::string>> cls_;
};

/// Key (C, r, f) of the field typing.
struct FieldKey {
  std::string cls;
  Region region;
  std::string field;

  friend bool operator==(const FieldKey&, const FieldKey&) = default;
  friend auto operator<=>(const FieldKey&, const FieldKey&) = default;
};

using FieldTyping = std::map<FieldKey, std::set<Region>>;

inline RegionMeta region_meta(const fj::Program& p) { return RegionMeta(p); }

}  // namespace guidecheck
