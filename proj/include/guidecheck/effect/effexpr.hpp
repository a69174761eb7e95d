#pragma once

#include <map>
#include <utility>

namespace guidecheck {

/// Formal effect expression: a finite map from keys (regions or method
/// signatures) to effect elements. Entries holding the least element are
/// never stored, so structural equality is semantic equality.
template <class K, class E>
class EffExpr {
 public:
  using Map = std::map<K, E>;

  EffExpr() = default;

  template <class D>
  static EffExpr single(const D& d, K key, E value) {
    EffExpr out;
    if (!d.is_bottom(value)) out.entries_.emplace(std::move(key), std::move(value));
    return out;
  }

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  const E* find(const K& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Joins value into the entry for key; returns true if the entry grew.
  template <class D>
  bool add(const D& d, const K& key, const E& value) {
    if (d.is_bottom(value)) return false;
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(key, value);
      return true;
    }
    if (d.leq(value, it->second)) return false;
    it->second = d.join(it->second, value);
    return true;
  }

  template <class D>
  void erase(const D&, const K& key) {
    entries_.erase(key);
  }

  friend bool operator==(const EffExpr&, const EffExpr&) = default;

 private:
  Map entries_;
};

template <class D, class K, class E>
EffExpr<K, E> join(const D& d, const EffExpr<K, E>& a, const EffExpr<K, E>& b) {
  EffExpr<K, E> out = a;
  for (const auto& [k, v] : b) out.add(d, k, v);
  return out;
}

/// (U·T)(x) = U·T(x), for finite or infinite value types.
template <class D, class K, class E>
EffExpr<K, E> scale(const D& d, const typename D::Fin& u, const EffExpr<K, E>& t) {
  EffExpr<K, E> out;
  if (d.is_bottom(u)) return out;
  for (const auto& [k, v] : t) out.add(d, k, d.concat(u, v));
  return out;
}

template <class D, class K, class E>
bool leq(const D& d, const EffExpr<K, E>& a, const EffExpr<K, E>& b) {
  for (const auto& [k, v] : a) {
    const E* w = b.find(k);
    if (!w || !d.leq(v, *w)) return false;
  }
  return true;
}

}  // namespace guidecheck
