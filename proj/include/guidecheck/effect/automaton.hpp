#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guidecheck/effect/alphabet.hpp"

namespace guidecheck {

/// Bit set over automaton states; guideline automata have at most 64 states.
using StateSet = std::uint64_t;
inline constexpr int kMaxStates = 64;

inline StateSet bit(int q) { return StateSet{1} << q; }

/// An extended Büchi automaton: read as an NFA on finite words and as a
/// Büchi automaton on infinite words, with the same accepting set.
class GuidelineAutomaton {
 public:
  struct Transition {
    int from;
    Event letter;
    int to;
  };

  GuidelineAutomaton(Alphabet sigma, std::vector<std::string> states,
                     std::vector<Transition> transitions, StateSet initial, StateSet accepting);

  const Alphabet& alphabet() const { return sigma_; }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  StateSet initial() const { return initial_; }
  StateSet accepting() const { return accepting_; }
  StateSet all_states() const;

  /// Successors of a single state / of a state set under one letter.
  StateSet succ(int q, Event a) const { return succ_[q * sigma_.size() + a]; }
  StateSet post(StateSet from, Event a) const;
  StateSet post(StateSet from, const Word& w) const;

  bool accepts_finite(const Word& w) const;
  /// States from which u·v^ω has an accepting run (direct product search).
  StateSet lasso_value(const Word& u, const Word& v) const;
  bool accepts_lasso(const Word& u, const Word& v) const {
    return (lasso_value(u, v) & initial_) != 0;
  }
  /// States from which some accepting state is reachable (zero steps allowed).
  StateSet live() const { return live_; }
  /// True iff some finite or infinite word accepted by the automaton has w
  /// as a prefix.
  bool prefix_extensible(const Word& w) const { return (post(initial_, w) & live_) != 0; }
  /// Length of the shortest prefix of w after which no accepted word can
  /// extend it, or -1 when every prefix stays extensible.
  int violation_position(const Word& w) const;

 private:
  Alphabet sigma_;
  std::vector<std::string> states_;
  std::vector<Transition> transitions_;
  StateSet initial_;
  StateSet accepting_;
  std::vector<StateSet> succ_;
  StateSet live_ = 0;
};

/// Parses the line-oriented guideline format (alphabet:/states:/initial:/
/// accepting:/trans: lines, `#` comments). `origin` prefixes error messages.
GuidelineAutomaton parse_guideline(const std::string& text, const std::string& origin = "<guideline>");
GuidelineAutomaton load_guideline(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace guidecheck
