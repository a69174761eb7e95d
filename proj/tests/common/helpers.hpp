#pragma once

#include <random>
#include <string>
#include <vector>

#include "guidecheck/effect/automaton.hpp"
#include "guidecheck/effect/reglang.hpp"

namespace testutil {

using guidecheck::Alphabet;
using guidecheck::GuidelineAutomaton;
using guidecheck::StateSet;
using guidecheck::Word;

inline Alphabet letters(int k) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(std::string(1, char('a' + i)));
  return Alphabet(names);
}

/// Random automaton with n states over k letters; every state has at least
/// one initial candidate so that the language is not trivially empty.
inline GuidelineAutomaton random_automaton(std::mt19937& rng, int n, int k) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  std::vector<GuidelineAutomaton::Transition> ts;
  std::bernoulli_distribution coin(0.45);
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < k; ++a)
      for (int r = 0; r < n; ++r)
        if (coin(rng)) ts.push_back({q, a, r});
  StateSet init = 0, acc = 0;
  for (int q = 0; q < n; ++q) {
    if (coin(rng)) init |= guidecheck::bit(q);
    if (coin(rng)) acc |= guidecheck::bit(q);
  }
  if (!init) init = 1;
  return GuidelineAutomaton(letters(k), names, ts, init, acc);
}

inline Word random_word(std::mt19937& rng, int k, int min_len, int max_len) {
  std::uniform_int_distribution<int> len(min_len, max_len), letter(0, k - 1);
  Word w(static_cast<size_t>(len(rng)));
  for (auto& x : w) x = letter(rng);
  return w;
}

/// Random regular language built from a random regex of the given depth.
inline guidecheck::RegLang random_language(std::mt19937& rng, int k, int depth) {
  using guidecheck::RegLang;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
  int c = pick(rng);
  switch (c) {
    case 0: return RegLang::epsilon(k);
    case 1:
    case 2: return RegLang::letter(k, std::uniform_int_distribution<int>(0, k - 1)(rng));
    case 3: return random_language(rng, k, depth - 1).unite(random_language(rng, k, depth - 1));
    case 4:
    case 5: return random_language(rng, k, depth - 1).concat(random_language(rng, k, depth - 1));
    default: return random_language(rng, k, depth - 1).star();
  }
}

}  // namespace testutil

#include "guidecheck/lang/parser.hpp"

namespace testutil {

inline std::string corpus(const std::string& rel) { return std::string(GUIDECHECK_CORPUS_DIR) + "/" + rel; }

inline guidecheck::fj::Program load_program(const std::string& rel,
                                            const std::optional<Alphabet>& sigma = std::nullopt) {
  return guidecheck::fj::parse_program({{rel, guidecheck::read_file(corpus(rel))}}, sigma);
}

}  // namespace testutil
