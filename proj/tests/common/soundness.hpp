#pragma once

// Desk-scale soundness: every interpreter run of an entry method must be
// covered by the inferred table and the solved infinitary typing.

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "common/helpers.hpp"
#include "guidecheck/effect/profile.hpp"
#include "guidecheck/infer/infer.hpp"
#include "guidecheck/interp/interp.hpp"
#include "guidecheck/solver/solver.hpp"

namespace testutil {

struct SoundnessStats {
  int programs = 0;
  int runs = 0;
  int terminated = 0;
  int thrown = 0;
  int divergent = 0;
  int lassos = 0;
  int stuck = 0;
  std::vector<std::string> violations;
};

/// Value of `//! key: value` in a source file, if present.
inline std::optional<std::string> metadata(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line, tag = "//! " + key + ":";
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0) {
      std::string v = line.substr(tag.size());
      v.erase(0, v.find_first_not_of(' '));
      return v;
    }
  return std::nullopt;
}

/// One lasso (u, v) per ω-value the automaton can produce, |u|,|v| <= 3.
inline std::vector<std::pair<Word, Word>> omega_value_reps(const GuidelineAutomaton& g) {
  std::map<StateSet, std::pair<Word, Word>> reps;
  const auto ws = guidecheck::words_up_to(g.alphabet().size(), 3);
  for (const auto& u : ws)
    for (const auto& v : ws)
      if (!v.empty()) reps.try_emplace(g.lasso_value(u, v), u, v);
  std::vector<std::pair<Word, Word>> out;
  for (auto& [s, uv] : reps) out.push_back(uv);
  return out;
}

inline Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Checks every enumerated run of every method declared in the program
/// against the table inferred over `g`. The program is parsed over g's
/// alphabet. `mutate` may damage the table to show the check is not vacuous.
inline void check_soundness(const std::string& rel, const GuidelineAutomaton& g, int fuel, SoundnessStats& st,
                            const std::function<void(guidecheck::ClassTableB<guidecheck::ProfileDomain>&)>& mutate =
                                nullptr) {
  namespace fs = std::filesystem;
  using namespace guidecheck;
  using D = ProfileDomain;
  const std::string path = corpus(rel);
  const std::string text = read_file(path);
  const Alphabet& sigma = g.alphabet();
  fj::Program p = fj::parse_program({{rel, text}}, sigma);
  Intrinsics intr;
  if (auto cfg = metadata(text, "config"))
    intr = load_config((fs::path(path).parent_path() / *cfg).string(), p, sigma);

  D d(g);
  auto res = infer(p, d, &intr);
  if (mutate) mutate(res.table);
  const auto eta = solve(d, equation_system(res.table));
  interp::Interpreter in(p, &intr);
  const RegionMeta& meta = in.meta();
  const auto reps = omega_value_reps(g);
  const auto suffixes = words_up_to(sigma.size(), 4);
  ++st.programs;

  auto fail = [&](const std::string& what, const std::string& entry, const interp::Outcome& o) {
    st.violations.push_back(rel + " " + entry + ": " + what + " (trace " + sigma.show(o.trace) + ")");
  };
  auto covered = [&](const RegExpr<D>& x, interp::Value v, const interp::Heap& h, const Word& w) {
    for (const auto& [r, e] : x)
      if (interp::satisfies(v, h, r, meta) && d.member(w, e)) return true;
    return false;
  };

  for (const auto& c : p.class_names())
    for (const auto& md : p.decl(c).methods) {
      if (intr.covers(c, md.name)) continue;
      Sig sig{c, Region::unknown(), md.name, std::vector<Region>(md.params.size(), Region::unknown())};
      const std::string entry = c + "." + md.name;
      const auto& me = res.table.m.at(sig);
      const auto& inf = eta.at(sig);
      for (const auto& ex : interp::enumerate_traces(in, c, md.name, fuel)) {
        const auto& o = ex.outcome;
        ++st.runs;
        if (o.kind == interp::Outcome::Stuck) {
          ++st.stuck;
          continue;
        }
        if (!interp::satisfies(o.heap, res.table.f, meta)) fail("heap violates F", entry, o);
        switch (o.kind) {
          case interp::Outcome::Terminated:
            ++st.terminated;
            if (!covered(me.t, o.value, o.heap, o.trace)) fail("terminating trace not in T", entry, o);
            break;
          case interp::Outcome::Thrown:
            ++st.thrown;
            if (!covered(me.h, o.value, o.heap, o.trace)) fail("thrown trace not in H", entry, o);
            break;
          case interp::Outcome::OutOfFuel: {
            ++st.divergent;
            if (o.lasso) {
              ++st.lassos;
              // A silent cycle leaves the finite trace stem·ε^ω = stem.
              bool in = o.lasso->cycle.empty() ? d.member(o.lasso->stem, inf)
                                               : d.member_lasso(o.lasso->stem, o.lasso->cycle, inf);
              if (!in) fail("lasso not in eta", entry, o);
            }
            bool ext = false;
            for (const auto& [u, v] : reps)
              if (d.member_lasso(cat(o.trace, u), v, inf)) ext = true;
            // A run cut short by fuel may still terminate or throw.
            for (size_t i = 0; !ext && i < suffixes.size(); ++i) {
              Word w = cat(o.trace, suffixes[i]);
              if (d.member(w, inf)) ext = true;
              for (const auto& x : {&me.t, &me.h})
                for (const auto& [r, e] : *x)
                  if (d.member(w, e)) ext = true;
            }
            if (!ext) fail("divergent prefix not extensible", entry, o);
            break;
          }
          default:
            break;
        }
      }
    }
}

/// Fixed automata over {a, b, c}: the universal one and random ones.
inline std::vector<GuidelineAutomaton> soundness_automata(int n_random, unsigned seed) {
  std::vector<GuidelineAutomaton> out;
  std::vector<GuidelineAutomaton::Transition> all;
  for (int a = 0; a < 3; ++a) all.push_back({0, a, 0});
  out.emplace_back(letters(3), std::vector<std::string>{"q"}, all, StateSet{1}, StateSet{1});
  std::mt19937 rng(seed);
  for (int i = 0; i < n_random; ++i) out.push_back(random_automaton(rng, 2 + i % 2, 3));
  return out;
}

inline std::vector<std::string> soundness_corpus() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus("soundness")))
    if (e.path().extension() == ".fj") out.push_back("soundness/" + e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testutil
