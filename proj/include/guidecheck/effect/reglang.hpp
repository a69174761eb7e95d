#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guidecheck/effect/alphabet.hpp"

namespace guidecheck {

/// Nondeterministic automaton with epsilon edges (letter -1). Used only as a
/// construction vehicle for RegLang.
struct Nfa {
  explicit Nfa(int k) : letters(k) {}

  int add_state(bool accepting = false) {
    edges.emplace_back();
    final.push_back(accepting);
    return static_cast<int>(edges.size()) - 1;
  }
  void add_edge(int from, int letter, int to) { edges[from].emplace_back(letter, to); }
  int add_copy(const Nfa& other);  // returns offset of the copied states

  int letters;
  std::vector<std::vector<std::pair<int, int>>> edges;
  std::vector<char> final;
  std::vector<int> starts;
};

/// A regular language of finite words, stored as the canonical minimal
/// complete DFA (states numbered breadth-first from the start state). Two
/// RegLangs over the same alphabet are equal iff their languages are equal.
class RegLang {
 public:
  RegLang() : RegLang(empty(0)) {}

  static RegLang empty(int k);
  static RegLang epsilon(int k);
  static RegLang letter(int k, Event a);
  static RegLang universal(int k);
  static RegLang of_word(int k, const Word& w);
  static RegLang of_words(int k, const std::vector<Word>& ws);
  static RegLang determinize(const Nfa& nfa);
  /// Builds the canonical form of an arbitrary complete DFA with start 0.
  static RegLang from_dfa(int k, std::vector<int> delta, std::vector<char> accepting);

  int letters() const { return k_; }
  int states() const { return static_cast<int>(acc_.size()); }
  int next(int s, Event a) const { return delta_[s * k_ + a]; }
  bool accepting(int s) const { return acc_[s] != 0; }

  bool contains(const Word& w) const;
  bool is_empty() const;
  bool has_epsilon() const { return accepting(0); }
  bool subset_of(const RegLang& o) const;

  RegLang unite(const RegLang& o) const;
  RegLang intersect(const RegLang& o) const;
  RegLang minus(const RegLang& o) const;
  RegLang concat(const RegLang& o) const;
  RegLang star() const;
  RegLang nonempty() const;  // the language without the empty word

  std::vector<Word> words_up_to(int n) const;
  std::optional<Word> shortest() const;
  Nfa to_nfa() const;
  std::string to_regex(const Alphabet& sigma) const;

  friend bool operator==(const RegLang&, const RegLang&) = default;
  friend auto operator<=>(const RegLang&, const RegLang&) = default;

 private:
  RegLang(int k, std::vector<int> delta, std::vector<char> acc)
      : k_(k), delta_(std::move(delta)), acc_(std::move(acc)) {}

  template <class Pred>
  RegLang product(const RegLang& o, Pred keep) const;

  int k_ = 0;
  std::vector<int> delta_;
  std::vector<char> acc_;
};

/// Parses a regular expression over event names: alternation `|`,
/// juxtaposition for concatenation, postfix `*`, parentheses, and `eps`.
RegLang parse_regex(const std::string& text, const Alphabet& sigma);

}  // namespace guidecheck
