#include <algorithm>
#include <random>

#include "doctest.h"
#include "guidecheck/effect/oracle.hpp"
#include "guidecheck/effect/profile.hpp"
#include "guidecheck/effect/toy.hpp"
#include "guidecheck/infer/infer.hpp"
#include "guidecheck/solver/solver.hpp"
#include "common/golden.hpp"

using namespace guidecheck;
using testutil::corpus;
using testutil::load_program;

namespace {

using testutil::Golden;
using testutil::kGolden;
using testutil::sig;
using testutil::Solved;

/// γ of every coefficient: the concretized call system.
EquationSystem<OracleDomain> concretize_system(const ProfileDomain& d, const OracleDomain& o,
                                               const EquationSystem<ProfileDomain>& sys) {
  EquationSystem<OracleDomain> out;
  for (const auto& [s, rhs] : sys) {
    CallExpr<OracleDomain> e;
    for (const auto& [t, u] : rhs) e.add(o, t, d.gamma(u));
    out.emplace(s, e);
  }
  return out;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("singleton system") {
    ToyDomain d;
    Sig x = sig("X", Region::unknown(), "m"), y = sig("Y", Region::unknown(), "m");
    EquationSystem<ToyDomain> sys;
    sys[x].add(d, x, d.letter(0));
    sys[x].add(d, y, d.unit());
    sys[y].add(d, y, d.unit());
    auto eta = solve(d, sys);
    // Y = ε·Y has greatest solution {ε}; X = a*·{ε} ⊔ a^ω.
    CHECK(eta.at(y).bits == ToyInf::kEps);
    CHECK(eta.at(x).bits == (ToyInf::kEps | ToyInf::kPlus | ToyInf::kOmega));
  }

  TEST_CASE("linked list eta") {
    Solved s(kGolden[0]);
    auto eta = solve(s.d, s.sys);
    auto node = [](const Region& r) { return sig("Node", r, "last"); };
    for (const auto& r : {Region::null(), Region::created_at("l1"), Region::created_at("l2")})
      CHECK(s.d.is_bottom(eta.at(node(r))));
    CHECK(s.d.is_bottom(eta.at(sig("Test", Region::unknown(), "linear"))));
    for (const auto& key : {node(Region::created_at("l3")), sig("Test", Region::unknown(), "cyclic")}) {
      const auto& v = eta.at(key);
      CHECK(s.d.member_lasso({}, {0}, v));
      CHECK(v.fin.empty());
    }
  }

  TEST_CASE("self loop keeps only the infinite word") {
    Solved s(kGolden[3]);
    auto eta = solve(s.d, s.sys);
    const auto& v = eta.at(sig("Loop", Region::unknown(), "f"));
    CHECK(s.d.member_lasso({}, {0}, v));
    for (const auto& w : words_up_to(1, 8)) CHECK_FALSE(s.d.member(w, v));
    ToyDomain toy;
    CHECK(toy.naive_gfp(toy.letter(0)).bits == (ToyInf::kPlus | ToyInf::kOmega));
    CHECK(toy.omega(toy.letter(0)).bits == ToyInf::kOmega);
  }

  TEST_CASE("fixed-point law on golden systems") {
    for (const auto& gd : kGolden) {
      Solved s(gd);
      auto eta = solve(s.d, s.sys);
      CHECK(substitute(s.d, s.sys, eta) == eta);
    }
  }

  TEST_CASE("elimination order invariance") {
    std::mt19937 rng(7);
    for (const auto& gd : kGolden) {
      Solved s(gd);
      auto base = solve(s.d, s.sys);
      std::vector<Sig> order;
      for (const auto& [k, v] : s.sys) order.push_back(k);
      for (int i = 0; i < 10; ++i) {
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(solve(s.d, s.sys, order) == base);
      }
    }
  }

  TEST_CASE("unclosed system is rejected") {
    ToyDomain d;
    EquationSystem<ToyDomain> sys;
    Sig x = sig("X", Region::unknown(), "m");
    sys[x].add(d, sig("Y", Region::unknown(), "m"), d.unit());
    CHECK_THROWS_AS(solve(d, sys), UsageError);
  }

  TEST_CASE("approximation chain") {
    Alphabet sigma({"a"});
    OracleDomain o(sigma);
    Sig f = sig("Loop", Region::unknown(), "f");
    EquationSystem<OracleDomain> sys;
    sys[f].add(o, f, o.letter(0));
    auto eta0 = approx_eta_n(o, sys, 0);
    CHECK(bounded_equiv(eta0.at(f), OmegaLang::universal(1)));
    OmegaLang inter = OmegaLang::universal(1);
    for (int n = 1; n <= 8; ++n) {
      auto en = approx_eta_n(o, sys, n).at(f);
      // η_n = aⁿ·Σ^{≤ω}.
      for (const auto& w : words_up_to(1, 10)) CHECK(en.contains(w) == (int(w.size()) >= n));
    }
    auto res = approx_eta(o, sys, 50);
    CHECK(res.stabilized);
    CHECK(res.eta.at(f).contains_lasso({}, {0}));
    for (const auto& w : words_up_to(1, 6)) CHECK_FALSE(res.eta.at(f).contains(w));
    auto capped = approx_eta(o, sys, 3);
    CHECK_FALSE(capped.stabilized);
  }

  TEST_CASE("solve agrees with the concretized greatest solution") {
    int compared = 0;
    for (const auto& gd : kGolden) {
      Solved s(gd);
      OracleDomain o(s.g.alphabet());
      auto eta = solve(s.d, s.sys);
      const int k = s.g.alphabet().size();
      const int bound = k == 1 ? 6 : k == 2 ? 4 : 3;
      auto chain = approx_eta(o, concretize_system(s.d, o, s.sys), 40, bound);
      if (!chain.stabilized) continue;  // inconclusive
      ++compared;
      for (const auto& [key, v] : eta) {
        const auto& ov = chain.eta.at(key);
        // α of the concrete solution restricted to bounded words and lassos.
        std::set<ProfileId> fin;
        for (const auto& w : words_up_to(k, bound))
          if (ov.contains(w)) fin.insert(s.d.of_words({w}).ids().front());
        std::set<StateSet> inf;
        for (const auto& u : words_up_to(k, bound / 2))
          for (const auto& c : words_up_to(k, bound - bound / 2))
            if (!c.empty() && ov.contains_lasso(u, c)) inf.insert(s.g.lasso_value(u, c));
        CHECK(fin == std::set<ProfileId>(v.fin.ids().begin(), v.fin.ids().end()));
        CHECK(inf == std::set<StateSet>(v.inf.begin(), v.inf.end()));
      }
    }
    CHECK(compared == int(kGolden.size()));
  }

  TEST_CASE("linked list chain stabilizes early") {
    Solved s(kGolden[0]);
    OracleDomain o(s.g.alphabet());
    auto sys = reachable_system(concretize_system(s.d, o, s.sys),
                                {sig("Test", Region::unknown(), "linear"), sig("Test", Region::unknown(), "cyclic")});
    auto res = approx_eta(o, sys, 40);
    REQUIRE(res.stabilized);
    CHECK(res.eta.at(sig("Test", Region::unknown(), "cyclic")).contains_lasso({}, {0}));
    CHECK(o.is_bottom(approx_eta_n(o, sys, 4).at(sig("Test", Region::unknown(), "linear"))));
  }
}
