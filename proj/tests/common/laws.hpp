#pragma once

// Randomized checks of the Büchi abstraction laws for the transition-profile
// domain. Concrete sides are computed with the oracle languages, so every
// equation compares the domain against an independent construction.

#include <map>
#include <random>
#include <string>

#include "common/helpers.hpp"
#include "guidecheck/effect/oracle.hpp"
#include "guidecheck/effect/profile.hpp"

namespace testutil {

using guidecheck::MixAbs;
using guidecheck::OmegaLang;
using guidecheck::ProfileDomain;
using guidecheck::RegLang;

struct LawReport {
  int cases = 0;
  std::map<std::string, int> failures;  // law name -> count
  std::map<std::string, int> checked;

  int total_failures() const {
    int n = 0;
    for (const auto& [k, v] : failures) n += v;
    return n;
  }
  void check(const std::string& law, bool ok) {
    ++checked[law];
    if (!ok) ++failures[law];
  }
};

inline RegLang law_language(std::mt19937& rng, int k) {
  if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) return RegLang::empty(k);
  return random_language(rng, k, 3);
}

inline OmegaLang law_omega_language(std::mt19937& rng, int k) {
  OmegaLang v(law_language(rng, k));
  int pairs = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < pairs; ++i) v.add_pair(law_language(rng, k), law_language(rng, k));
  return v;
}

/// One random automaton with at most 3 states and 2 letters, and random
/// languages A, B, C ⊆ Σ* and U, V ⊆ Σ^{≤ω}.
inline void law_case(std::mt19937& rng, LawReport& rep) {
  using guidecheck::concat;
  using guidecheck::omega;
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  const int k = std::uniform_int_distribution<int>(1, 2)(rng);
  auto g = random_automaton(rng, n, k);
  ProfileDomain d(g);
  auto alpha = [&](const RegLang& l) { return d.from_language(l); };
  auto alpha_w = [&](const OmegaLang& l) { return guidecheck::abstract_language(d, l); };

  RegLang A = law_language(rng, k), B = law_language(rng, k), C = law_language(rng, k);
  OmegaLang U = law_omega_language(rng, k), V = law_omega_language(rng, k);
  auto a = alpha(A), b = alpha(B), c = alpha(C);
  auto u = alpha_w(U), v = alpha_w(V);
  ++rep.cases;

  // Büchi algebra: associativity and monotonicity.
  rep.check("assoc fin", d.concat(a, d.concat(b, c)) == d.concat(d.concat(a, b), c));
  rep.check("assoc mixed", d.concat(a, d.concat(b, v)) == d.concat(d.concat(a, b), v));
  auto ab = d.join(a, b);
  rep.check("monotone concat", d.leq(d.concat(a, c), d.concat(ab, c)) && d.leq(d.concat(c, a), d.concat(c, ab)));
  rep.check("monotone mixed", d.leq(d.concat(a, v), d.concat(ab, v)) && d.leq(d.concat(a, u), d.concat(a, d.join(u, v))));
  rep.check("monotone omega", d.leq(d.omega(a), d.omega(ab)));

  // Homomorphism of the abstraction.
  rep.check("alpha concat", alpha(A.concat(B)) == d.concat(a, b));
  rep.check("alpha mixed concat", alpha_w(concat(A, V)) == d.concat(a, v));
  rep.check("alpha omega", alpha_w(omega(A)) == d.omega(a));
  rep.check("alpha star", alpha(A.star()) == d.star(a));

  // Galois insertion.
  rep.check("alpha gamma fin", alpha(d.gamma(a)) == a);
  rep.check("alpha gamma inf", alpha_w(guidecheck::concretize(d, u)) == u);
  rep.check("gamma alpha fin", A.subset_of(d.gamma(a)));
  rep.check("gamma alpha inf", guidecheck::bounded_leq(U, guidecheck::concretize(d, u), 4));

  // Joins are preserved; concatenation distributes.
  rep.check("alpha join fin", alpha(A.unite(B)) == ab);
  rep.check("alpha join inf", alpha_w(U.unite(V)) == d.join(u, v));
  rep.check("distrib left", d.concat(ab, v) == d.join(d.concat(a, v), d.concat(b, v)));
  rep.check("distrib right", d.concat(a, d.join(u, v)) == d.join(d.concat(a, u), d.concat(a, v)));
  rep.check("distrib fin", d.concat(c, ab) == d.join(d.concat(c, a), d.concat(c, b)));

  // ω of a concretization, and unfolding.
  rep.check("alpha omega gamma", alpha_w(omega(d.gamma(a))) == d.omega(a));
  rep.check("omega unfold", d.omega(a) == d.concat(a, d.omega(a)));

  // Wilke algebra.
  rep.check("wilke shift", d.concat(a, d.omega(d.concat(b, a))) == d.omega(d.concat(a, b)));
  rep.check("wilke power", d.omega(d.concat(a, a)) == d.omega(a) &&
                               d.omega(d.concat(a, d.concat(a, a))) == d.omega(a));
}

inline LawReport run_law_cases(int cases, unsigned seed) {
  std::mt19937 rng(seed);
  LawReport rep;
  for (int i = 0; i < cases; ++i) law_case(rng, rep);
  return rep;
}

/// γ(α(𝔄)) = 𝔄 on every word of length <= max_word and every lasso with
/// |u|, |v| <= max_lasso. Returns the number of disagreements.
inline int faithfulness_failures(const GuidelineAutomaton& g, int max_word, int max_lasso) {
  ProfileDomain d(g);
  const MixAbs x = guidecheck::abstract_language(d, guidecheck::guideline_language(g));
  const int k = g.alphabet().size();
  int bad = 0;
  for (const auto& w : guidecheck::words_up_to(k, max_word))
    if (d.member(w, x) != g.accepts_finite(w)) ++bad;
  const auto lw = guidecheck::words_up_to(k, max_lasso);
  for (const auto& u : lw)
    for (const auto& v : lw)
      if (!v.empty() && d.member_lasso(u, v, x) != g.accepts_lasso(u, v)) ++bad;
  return bad;
}

}  // namespace testutil
