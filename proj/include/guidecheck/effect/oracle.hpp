#pragma once

#include <string>
#include <utility>
#include <vector>

#include "guidecheck/effect/automaton.hpp"
#include "guidecheck/effect/profile.hpp"
#include "guidecheck/effect/reglang.hpp"

namespace guidecheck {

/// A concrete language of finite and infinite words: a regular finite part
/// plus a finite union of U·V^ω with V free of the empty word. This is the
/// reference ("oracle") instance of the effect domain.
class OmegaLang {
 public:
  explicit OmegaLang(int k = 0) : fin_(RegLang::empty(k)) {}
  explicit OmegaLang(RegLang fin) : fin_(std::move(fin)) {}

  static OmegaLang universal(int k);

  int letters() const { return fin_.letters(); }
  const RegLang& fin() const { return fin_; }
  const std::vector<std::pair<RegLang, RegLang>>& inf() const { return inf_; }

  /// Adds U·V^ω (V's empty word is ignored); empty components are dropped.
  void add_pair(const RegLang& u, const RegLang& v);

  bool contains(const Word& w) const { return fin_.contains(w); }
  bool contains_lasso(const Word& u, const Word& v) const;

  OmegaLang unite(const OmegaLang& o) const;

  friend bool operator==(const OmegaLang&, const OmegaLang&) = default;

 private:
  RegLang fin_;
  std::vector<std::pair<RegLang, RegLang>> inf_;  // sorted, unique
};

OmegaLang concat(const RegLang& u, const OmegaLang& x);
/// U^ω: finite part U* when ε ∈ U (else empty), infinite part (U∖{ε})^ω.
OmegaLang omega(const RegLang& u);
/// Does u·v^ω belong to U·(V∖{ε})^ω?
bool lasso_in_pair(const RegLang& u_lang, const RegLang& v_lang, const Word& u, const Word& v);

/// Agreement on every finite word of length <= bound and every lasso u·v^ω
/// with |u| <= bound and 1 <= |v| <= bound.
bool bounded_equiv(const OmegaLang& a, const OmegaLang& b, int bound = 6);
bool bounded_leq(const OmegaLang& a, const OmegaLang& b, int bound = 6);

/// The guideline's language 𝔄 as an OmegaLang.
OmegaLang guideline_language(const GuidelineAutomaton& g);

/// α_{≤ω} of an oracle language into the transition-profile domain.
MixAbs abstract_language(const ProfileDomain& d, const OmegaLang& x);
/// γ_{≤ω} of a profile element as an oracle language.
OmegaLang concretize(const ProfileDomain& d, const MixAbs& x);

/// The oracle instance of the effect-domain contract. Equality of infinite
/// elements is structural; semantic comparisons use bounded_equiv.
class OracleDomain {
 public:
  using Fin = RegLang;
  using Inf = OmegaLang;

  explicit OracleDomain(Alphabet sigma, int bound = 6) : sigma_(std::move(sigma)), bound_(bound) {}

  const Alphabet& alphabet() const { return sigma_; }
  int k() const { return sigma_.size(); }

  Fin bottom() const { return RegLang::empty(k()); }
  Fin unit() const { return RegLang::epsilon(k()); }
  Fin letter(Event a) const { return RegLang::letter(k(), a); }
  Fin from_language(const RegLang& l) const { return l; }

  bool is_bottom(const Fin& a) const { return a.is_empty(); }
  Fin join(const Fin& a, const Fin& b) const { return a.unite(b); }
  bool leq(const Fin& a, const Fin& b) const { return a.subset_of(b); }
  Fin concat(const Fin& a, const Fin& b) const { return a.concat(b); }
  Fin star(const Fin& a) const { return a.star(); }

  Inf inf_bottom() const { return OmegaLang(k()); }
  bool is_bottom(const Inf& v) const { return v.fin().is_empty() && v.inf().empty(); }
  Inf join(const Inf& a, const Inf& b) const { return a.unite(b); }
  bool leq(const Inf& a, const Inf& b) const { return bounded_leq(a, b, bound_); }
  Inf concat(const Fin& a, const Inf& v) const { return guidecheck::concat(a, v); }
  Inf omega(const Fin& a) const { return guidecheck::omega(a); }

  std::string show(const Fin& a) const { return a.to_regex(sigma_); }
  std::string show(const Inf& v) const;

 private:
  Alphabet sigma_;
  int bound_;
};

}  // namespace guidecheck
