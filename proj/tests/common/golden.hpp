#pragma once

#include <string>
#include <vector>

#include "common/helpers.hpp"
#include "guidecheck/effect/profile.hpp"
#include "guidecheck/infer/infer.hpp"
#include "guidecheck/solver/solver.hpp"

namespace testutil {

struct Golden {
  std::string program, guideline, config;
};

/// Program/guideline pairs whose call systems the solver tests use.
inline const std::vector<Golden> kGolden = {
    {"golden/linked_list.fj", "golden/parity_a.gdl", ""},
    {"golden/let_regions.fj", "golden/aa_bb.gdl", ""},
    {"golden/subclass_narrowing.fj", "golden/aa_bb.gdl", ""},
    {"golden/self_loop.fj", "golden/parity_a.gdl", ""},
    {"golden/serve.fj", "golden/auth_safety.gdl", "golden/serve.cfg"},
    {"golden/serve.fj", "golden/log_liveness.gdl", "golden/serve.cfg"},
};

struct Solved {
  guidecheck::GuidelineAutomaton g;
  guidecheck::ProfileDomain d;
  guidecheck::fj::Program p;
  guidecheck::Intrinsics intr;
  guidecheck::EquationSystem<guidecheck::ProfileDomain> sys;
  explicit Solved(const Golden& gd)
      : g(guidecheck::load_guideline(corpus(gd.guideline))), d(g), p(load_program(gd.program, g.alphabet())) {
    if (!gd.config.empty()) intr = guidecheck::load_config(corpus(gd.config), p, g.alphabet());
    sys = guidecheck::equation_system(guidecheck::infer(p, d, &intr).table);
  }
};

inline guidecheck::Sig sig(const std::string& c, const guidecheck::Region& r, const std::string& m) {
  return guidecheck::Sig{c, r, m, {}};
}

}  // namespace testutil
