#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>
#include <string>

#include "guidecheck/effect/effexpr.hpp"
#include "guidecheck/infer/region.hpp"
#include "guidecheck/lang/ast.hpp"

namespace guidecheck {

template <class D>
using RegExpr = EffExpr<Region, typename D::Fin>;
template <class D>
using CallExpr = EffExpr<Sig, typename D::Fin>;

/// (T, H, S): terminating results, thrown exceptions, calls.
template <class D>
struct MethodEntry {
  RegExpr<D> t;
  RegExpr<D> h;
  CallExpr<D> s;

  friend bool operator==(const MethodEntry&, const MethodEntry&) = default;
};

template <class D>
struct ClassTableB {
  FieldTyping f;
  std::map<Sig, MethodEntry<D>> m;

  friend bool operator==(const ClassTableB&, const ClassTableB&) = default;
};

template <class D>
bool entry_leq(const D& d, const MethodEntry<D>& a, const MethodEntry<D>& b) {
  return leq(d, a.t, b.t) && leq(d, a.h, b.h) && leq(d, a.s, b.s);
}

template <class D>
bool entry_join_into(const D& d, MethodEntry<D>& into, const MethodEntry<D>& from) {
  bool grew = false;
  for (const auto& [k, v] : from.t) grew |= into.t.add(d, k, v);
  for (const auto& [k, v] : from.h) grew |= into.h.add(d, k, v);
  for (const auto& [k, v] : from.s) grew |= into.s.add(d, k, v);
  return grew;
}

namespace detail {

inline int class_depth(const fj::Program& p, const std::string& c) {
  int d = 0;
  for (std::string cur = c; cur != fj::kObject; cur = p.super(cur)) ++d;
  return d;
}

}  // namespace detail

/// Smallest pointwise-larger table that is well-formed: Null in every field
/// entry, field entries below the Unknown entry and equal along subclassing,
/// and method entries growing towards superclasses.
template <class D>
ClassTableB<D> check_class_table(const fj::Program& p, const RegionMeta& meta, const D& d,
                                 ClassTableB<D> table) {
  // Fields: group entries by declaring class, field and region.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> sharing;
  for (const auto& c : p.class_names())
    for (const auto& fd : p.fields_of(c)) sharing[{*p.field_owner(c, fd.name), fd.name}].push_back(c);
  for (const auto& [key, classes] : sharing) {
    const std::string& field = key.second;
    std::map<Region, std::set<Region>> merged;
    for (const Region& r : meta.regions()) {
      auto& u = merged[r];
      u.insert(Region::null());
      for (const auto& c : classes) {
        auto it = table.f.find(FieldKey{c, r, field});
        if (it != table.f.end()) u.insert(it->second.begin(), it->second.end());
      }
    }
    auto& unk = merged[Region::unknown()];
    for (const auto& [r, u] : merged) unk.insert(u.begin(), u.end());
    for (const Region& r : meta.regions())
      for (const auto& c : classes) table.f[FieldKey{c, r, field}] = merged[r];
  }
  // Methods: join each entry into the superclass entry, deepest classes first.
  std::vector<std::pair<int, std::string>> order;
  for (const auto& c : p.class_names()) order.push_back({-detail::class_depth(p, c), c});
  std::sort(order.begin(), order.end());
  std::map<std::string, std::vector<Sig>> by_class;
  for (const auto& [sig, e] : table.m) by_class[sig.cls].push_back(sig);
  for (const auto& [depth, c] : order) {
    const std::string& sup = p.super(c);
    if (sup == fj::kObject) continue;
    for (const Sig& sig : by_class[c]) {
      if (!p.find_method(sup, sig.method)) continue;
      Sig up = sig;
      up.cls = sup;
      auto [it, fresh] = table.m.try_emplace(up);
      if (fresh) by_class[sup].push_back(up);
      entry_join_into(d, it->second, table.m.at(sig));
    }
  }
  return table;
}

}  // namespace guidecheck
