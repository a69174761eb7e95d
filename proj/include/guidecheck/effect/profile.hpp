#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "guidecheck/effect/automaton.hpp"
#include "guidecheck/effect/reglang.hpp"

namespace guidecheck {

/// Transition profile of a finite word: zero[q] holds the q' reachable from q
/// by a path that avoids accepting states, one[q] those reachable by a path
/// that visits one (both endpoints counted).
struct Profile {
  std::vector<StateSet> zero;
  std::vector<StateSet> one;

  bool has(int q, bool b, int q2) const { return ((b ? one : zero)[q] >> q2) & 1; }
  StateSet reach(int q) const { return zero[q] | one[q]; }
  std::vector<std::tuple<int, int, int>> triples() const;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

struct ProfileHash {
  size_t operator()(const Profile& p) const;
};

Profile compose(const Profile& p1, const Profile& p2);
Profile empty_word_profile(const GuidelineAutomaton& g);
Profile letter_profile(const GuidelineAutomaton& g, Event a);
Profile profile_of_word(const GuidelineAutomaton& g, const Word& w);

using ProfileId = std::uint32_t;

/// The finite monoid of realizable profiles of one guideline automaton, with
/// a fresh identity adjoined (id 0) that stands for the empty word only.
/// Computed once and shared read-only by every element built over it.
class ProfileMonoid {
 public:
  static constexpr ProfileId kUnit = 0;
  static constexpr size_t kMaxSize = 1u << 15;

  explicit ProfileMonoid(GuidelineAutomaton g);

  const GuidelineAutomaton& automaton() const { return g_; }
  const Alphabet& alphabet() const { return g_.alphabet(); }
  size_t size() const { return profiles_.size(); }

  ProfileId letter(Event a) const { return letters_.at(a); }
  ProfileId mul(ProfileId x, ProfileId y) const;
  ProfileId of_word(const Word& w) const;
  const Profile& profile(ProfileId x) const { return profiles_[x]; }
  const Word& witness(ProfileId x) const { return witness_[x]; }

  /// Every word with this profile is accepted by the NFA reading.
  bool accepting(ProfileId x) const { return accepting_[x] != 0; }
  bool idempotent(ProfileId x) const { return mul(x, x) == x; }
  const std::vector<ProfileId>& idempotents() const { return idempotents_; }

  /// p·X: the states with some p-path into X.
  StateSet act(ProfileId p, StateSet x) const;
  /// ω-value of any word v1 v2 ... whose blocks all have profile p (p ≠ unit).
  StateSet omega_power(ProfileId p) const;
  /// ω-value of u·v^ω, computed through profiles.
  StateSet lasso_value(const Word& u, const Word& v) const;
  /// All ω-values of infinite words, each with a witnessing lasso.
  const std::vector<StateSet>& values() const { return values_; }
  const std::pair<Word, Word>& value_witness(StateSet x) const { return value_witness_.at(x); }

 private:
  ProfileId intern(const Profile& p, const Word& w);

  GuidelineAutomaton g_;
  std::vector<Profile> profiles_;
  std::vector<Word> witness_;
  std::vector<char> accepting_;
  std::unordered_map<Profile, ProfileId, ProfileHash> ids_;
  std::vector<ProfileId> letters_;
  std::vector<ProfileId> table_;
  std::vector<ProfileId> idempotents_;
  std::vector<StateSet> idempotent_value_;
  std::vector<StateSet> values_;
  std::unordered_map<StateSet, std::pair<Word, Word>> value_witness_;
};

/// Element of the finite-trace abstraction: a set of profile ids.
class FinAbs {
 public:
  FinAbs() = default;

  const std::vector<ProfileId>& ids() const { return ids_; }
  bool empty() const { return ids_.empty(); }
  bool contains(ProfileId x) const;
  const ProfileMonoid* owner() const { return owner_; }

  friend bool operator==(const FinAbs& a, const FinAbs& b) { return a.ids_ == b.ids_; }
  friend auto operator<=>(const FinAbs& a, const FinAbs& b) { return a.ids_ <=> b.ids_; }

 private:
  friend class ProfileDomain;
  FinAbs(const ProfileMonoid* owner, std::vector<ProfileId> ids);

  const ProfileMonoid* owner_ = nullptr;
  std::vector<ProfileId> ids_;
};

/// Element of the finite-or-infinite abstraction: a finite part and a set of
/// ω-values. An ω-value is the set of automaton states from which an infinite
/// word has an accepting run; it is the same for every factorization of the
/// word, so γ of a value is a class of a partition of Σ^ω.
struct MixAbs {
  FinAbs fin;
  std::vector<StateSet> inf;  // sorted, unique

  friend bool operator==(const MixAbs&, const MixAbs&) = default;
  friend auto operator<=>(const MixAbs&, const MixAbs&) = default;
};

/// Transition-profile Büchi abstraction over one guideline automaton.
class ProfileDomain {
 public:
  using Fin = FinAbs;
  using Inf = MixAbs;

  explicit ProfileDomain(std::shared_ptr<const ProfileMonoid> m) : m_(std::move(m)) {}
  explicit ProfileDomain(const GuidelineAutomaton& g)
      : m_(std::make_shared<const ProfileMonoid>(g)) {}

  const ProfileMonoid& monoid() const { return *m_; }
  const Alphabet& alphabet() const { return m_->alphabet(); }
  const GuidelineAutomaton& automaton() const { return m_->automaton(); }

  Fin bottom() const { return Fin(m_.get(), {}); }
  Fin unit() const { return Fin(m_.get(), {ProfileMonoid::kUnit}); }
  Fin letter(Event a) const { return Fin(m_.get(), {m_->letter(a)}); }
  Fin of_ids(std::vector<ProfileId> ids) const;
  Fin of_words(const std::vector<Word>& ws) const;
  /// α_* of a regular language (exact, via product with the monoid).
  Fin from_language(const RegLang& l) const;

  bool is_bottom(const Fin& a) const { return a.empty(); }
  Fin join(const Fin& a, const Fin& b) const;
  bool leq(const Fin& a, const Fin& b) const;
  Fin concat(const Fin& a, const Fin& b) const;
  Fin star(const Fin& a) const;

  Inf inf_bottom() const { return Inf{bottom(), {}}; }
  bool is_bottom(const Inf& v) const { return v.fin.empty() && v.inf.empty(); }
  Inf join(const Inf& a, const Inf& b) const;
  bool leq(const Inf& a, const Inf& b) const;
  Inf concat(const Fin& a, const Inf& v) const;
  Inf omega(const Fin& a) const;

  bool member(const Word& w, const Fin& a) const;
  bool member(const Word& w, const Inf& v) const { return member(w, v.fin); }
  bool member_lasso(const Word& u, const Word& v, const Inf& x) const;
  /// Some word of γ(a) (finite) or γ(v) (finite or infinite) has w as prefix.
  bool prefix_member(const Word& w, const Fin& a) const;
  bool prefix_member(const Word& w, const Inf& v) const;

  bool accepts(const Fin& a) const;
  bool accepts(const Inf& v) const;

  /// Shortest witness words (and witness lassos for ω-values).
  std::string show(const Fin& a) const;
  std::string show(const Inf& v) const;
  std::vector<std::string> witnesses(const Fin& a) const;
  std::vector<std::string> witnesses(const Inf& v) const;

  /// γ as regular languages; U·(V)^ω pairs for the infinite part.
  RegLang gamma(const Fin& a) const;
  std::vector<std::pair<RegLang, RegLang>> gamma_pairs(StateSet value) const;

 private:
  void check(const Fin& a) const;
  std::vector<ProfileId> semigroup(const std::vector<ProfileId>& gens) const;

  std::shared_ptr<const ProfileMonoid> m_;
};

}  // namespace guidecheck
