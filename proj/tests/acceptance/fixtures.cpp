#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <random>

#include "common/golden.hpp"
#include "common/laws.hpp"
#include "common/soundness.hpp"
#include "guidecheck/check/analyze.hpp"
#include "guidecheck/effect/toy.hpp"

using namespace guidecheck;
using testutil::corpus;
using testutil::sig;
using testutil::Solved;

namespace acceptance {

namespace {

/// Collects failed checks; the detail keeps the first few.
struct Checks {
  std::vector<std::string> failed;
  int total = 0;

  void operator()(bool ok, const std::string& what) {
    ++total;
    if (!ok) failed.push_back(what);
  }
  Outcome outcome(const std::string& summary = "") const {
    std::string d = summary;
    for (size_t i = 0; i < failed.size() && i < 3; ++i) d += (d.empty() ? "" : "; ") + failed[i];
    if (failed.size() > 3) d += "; ...";
    return {failed.empty(), d};
  }
};

Region at(const std::string& l) { return Region::created_at(l); }

Outcome linked_list() {
  Checks ck;
  Solved s(testutil::kGolden[0]);
  auto w = [&](const std::string& x) { return s.g.alphabet().parse_word(x); };
  auto res = infer(s.p, s.d);
  const auto& m = res.table.m;
  auto last = [&](const Region& r) -> const MethodEntry<ProfileDomain>& { return m.at(sig("Node", r, "last")); };

  const auto* l1 = last(at("l1")).t.find(at("l1"));
  ck(l1 && last(at("l1")).t.size() == 1, "last@l1 has one result region");
  if (l1) {
    ck(s.d.member(w("a"), *l1), "a in last@l1");
    ck(!s.d.member(w("a a"), *l1), "aa not in last@l1");
  }
  const auto* r1 = last(at("l2")).t.find(at("l1"));
  const auto* r2 = last(at("l2")).t.find(at("l2"));
  ck(r1 && r2 && last(at("l2")).t.size() == 2, "last@l2 has results l1 and l2");
  if (r1 && r2) {
    ck(s.d.member(w("a a"), *r1) && !s.d.member(w("a"), *r1), "last@l2 l1 -> aa");
    ck(s.d.member(w("a"), *r2) && !s.d.member(w("a a"), *r2), "last@l2 l2 -> a");
  }
  const auto* l3 = last(at("l3")).t.find(at("l3"));
  ck(l3 != nullptr, "last@l3 terminates at l3");
  if (l3) {
    for (auto x : {"a", "a a", "a a a"}) ck(s.d.member(w(x), *l3), std::string(x) + " in last@l3");
    ck(!s.d.member({}, *l3), "eps not in last@l3");
  }
  auto eta = solve(s.d, s.sys);
  const auto& cyc = eta.at(sig("Test", Region::unknown(), "cyclic"));
  ck(s.d.member_lasso({}, w("a"), cyc), "a^w in eta(cyclic)");
  for (const auto& x : words_up_to(1, 8)) ck(!s.d.member(x, cyc), "no finite word in eta(cyclic)");
  ck(s.d.is_bottom(eta.at(sig("Test", Region::unknown(), "linear"))), "eta(linear) empty");
  return ck.outcome();
}

Outcome let_precision() {
  Checks ck;
  Solved s(testutil::kGolden[1]);
  auto w = [&](const std::string& x) { return s.g.alphabet().parse_word(x); };
  auto res = infer(s.p, s.d);
  const auto& e = res.table.m.at(Sig{"Test", Region::unknown(), "twice", {Region::unknown()}});
  ck(e.t.size() == 1 && e.t.find(Region::null()), "result region is exactly Null");
  ck(e.h.empty(), "nothing thrown");
  if (const auto* u = e.t.find(Region::null())) {
    ck(s.d.member(w("a a"), *u) && s.d.member(w("b b"), *u), "aa and bb are members");
    ck(!s.d.member(w("a b"), *u) && !s.d.member(w("b a"), *u), "ab and ba are not members");
  }
  return ck.outcome();
}

Outcome narrowing() {
  Checks ck;
  Solved s(testutil::kGolden[2]);
  auto w = [&](const std::string& x) { return s.g.alphabet().parse_word(x); };
  auto res = infer(s.p, s.d);
  const auto& m = res.table.m;
  const auto* on2 = m.at(sig("A", at("l2"), "f")).t.find(Region::null());
  ck(on2 != nullptr, "call on l2 terminates");
  if (on2) ck(s.d.member(w("b"), *on2) && !s.d.member(w("a"), *on2), "l2 -> {b} only");
  const auto* onu = m.at(sig("A", Region::unknown(), "f")).t.find(Region::null());
  ck(onu != nullptr, "call on Unknown terminates");
  if (onu) ck(s.d.member(w("a"), *onu) && s.d.member(w("b"), *onu), "Unknown -> {a, b}");
  const auto& b1 = m.at(sig("B", at("l1"), "f"));
  ck(b1.t.empty() && b1.h.empty() && b1.s.empty(), "(B, l1) stays empty");
  ck(check_well_typed(s.p, res.table, s.d).ok, "table is well-typed");
  return ck.outcome();
}

Outcome serve() {
  Checks ck;
  auto load = [](const std::string& gdl) {
    return load_inputs({corpus("golden/serve.fj")}, corpus("golden/" + gdl), corpus("golden/serve.cfg"));
  };
  AnalyzeOptions opt;
  opt.entries = {"Server.serve"};

  Inputs safe = load("auth_safety.gdl");
  Report r = analyze(safe, opt);
  ck(r.pass, "safety passes");
  for (const auto& s : r.signatures) {
    ck(s.terminating_ok && s.throws_ok, "safety finite verdicts pass");
    ck(s.infinite_ok, "safety infinitary verdict passes");
  }
  // The loop's infinite traces {authcheck, authcheck access}^w.
  ProfileDomain d(safe.guideline);
  auto eta = solve(d, equation_system(infer(safe.program, d, &safe.intrinsics).table));
  const auto& v = eta.at(Sig{"Server", Region::unknown(), "serve", {}});
  const Alphabet& sigma = safe.guideline.alphabet();
  ck(d.member_lasso({}, sigma.parse_word("authcheck"), v), "authcheck^w in eta(serve)");
  ck(d.member_lasso({}, sigma.parse_word("authcheck access"), v), "(authcheck access)^w in eta(serve)");
  ck(!d.member_lasso({}, sigma.parse_word("access"), v), "access^w not in eta(serve)");

  Inputs live = load("log_liveness.gdl");
  Report f = analyze(live, opt);
  ck(!f.pass, "liveness fails");
  bool inf_fail = false;
  for (const auto& s : f.signatures) inf_fail |= !s.infinite_ok;
  ck(inf_fail, "liveness fails on the infinitary verdict");
  ck(!f.counterexamples.empty(), "counterexample reported");
  for (const auto& c : f.counterexamples)
    ck(validate_counterexample(live.program, live.guideline, c, opt.fuel, &live.intrinsics), "counterexample replays");
  return ck.outcome();
}

Outcome laws() {
  Checks ck;
  auto rep = testutil::run_law_cases(1000, 20240601);
  ck(rep.cases == 1000, "1000 cases");
  for (const auto& [law, n] : rep.failures) ck(n == 0, law + " failed " + std::to_string(n) + " times");
  std::mt19937 rng(11);
  int automata = 0;
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 2; ++k)
      for (int i = 0; i < 10; ++i, ++automata)
        ck(testutil::faithfulness_failures(testutil::random_automaton(rng, n, k), 8, 5) == 0, "faithfulness");
  for (auto name : {"golden/parity_a.gdl", "golden/aa_bb.gdl", "golden/auth_safety.gdl", "golden/log_liveness.gdl",
                    "taint/taint.gdl"}) {
    ++automata;
    ck(testutil::faithfulness_failures(load_guideline(corpus(name)), 8, 5) == 0, std::string("faithfulness ") + name);
  }
  int checks = 0;
  for (const auto& [law, n] : rep.checked) checks += n;
  return ck.outcome(std::to_string(checks) + " law checks, " + std::to_string(automata) + " faithfulness automata");
}

Outcome remark_precision() {
  Checks ck;
  auto g = load_guideline(corpus("golden/parity_a.gdl"));
  ProfileDomain d(g);
  Sig f = sig("F", Region::unknown(), "f");
  EquationSystem<ProfileDomain> sys;
  sys[f].add(d, f, d.letter(0));
  const auto v = solve(d, sys).at(f);
  ck(d.member_lasso({}, {0}, v), "a^w in gamma");
  for (const auto& w : words_up_to(1, 10)) ck(!d.member(w, v), "no finite word in gamma");
  ToyDomain toy;
  ck(toy.naive_gfp(toy.letter(0)).bits == (ToyInf::kPlus | ToyInf::kOmega), "naive gfp is a+ u a^w");
  ToyDomain::Fin a = toy.letter(0);
  EquationSystem<ToyDomain> tsys;
  tsys[f].add(toy, f, a);
  ck(solve(toy, tsys).at(f).bits == ToyInf::kOmega, "toy solve is a^w");
  return ck.outcome();
}

Outcome soundness() {
  Checks ck;
  testutil::SoundnessStats st;
  auto files = testutil::soundness_corpus();
  int with_exc = 0, divergent = 0;
  for (const auto& f : files) {
    testutil::SoundnessStats one;
    for (const auto& g : testutil::soundness_automata(5, 3)) testutil::check_soundness(f, g, 24, one);
    with_exc += one.thrown > 0 || read_file(corpus(f)).find("catch") != std::string::npos;
    divergent += one.divergent > 0;
    st.programs += 1;
    st.runs += one.runs;
    for (auto& v : one.violations) st.violations.push_back(v);
  }
  ck(st.programs >= 20, "at least 20 programs");
  ck(with_exc >= 5, "at least 5 with exceptions");
  ck(divergent >= 5, "at least 5 divergent");
  for (const auto& v : st.violations) ck(false, v);
  return ck.outcome(std::to_string(st.programs) + " programs, " + std::to_string(with_exc) + " with exceptions, " +
                    std::to_string(divergent) + " divergent, " + std::to_string(st.runs) + " runs");
}

Outcome solver_laws() {
  Checks ck;
  std::mt19937 rng(5);
  for (const auto& gd : testutil::kGolden) {
    Solved s(gd);
    auto base = solve(s.d, s.sys);
    ck(substitute(s.d, s.sys, base) == base, "fixed point " + gd.program);
    std::vector<Sig> order;
    for (const auto& [k, v] : s.sys) order.push_back(k);
    for (int i = 0; i < 10; ++i) {
      std::shuffle(order.begin(), order.end(), rng);
      ck(solve(s.d, s.sys, order) == base, "order invariance " + gd.program);
    }
  }
  return ck.outcome(std::to_string(testutil::kGolden.size()) + " golden systems");
}

Outcome taint() {
  Checks ck;
  int n = 0, agree = 0;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(corpus("taint")))
    if (e.path().extension() == ".fj") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    ++n;
    auto text = read_file(path.string());
    auto dir = path.parent_path();
    auto cfg = testutil::metadata(text, "config");
    Inputs in = load_inputs({path.string()}, (dir / *testutil::metadata(text, "guideline")).string(),
                            cfg ? std::optional((dir / *cfg).string()) : std::nullopt);
    AnalyzeOptions opt;
    opt.entries = {*testutil::metadata(text, "entry")};
    bool pass = analyze(in, opt).pass;
    bool want = *testutil::metadata(text, "expect") == "pass";
    agree += pass == want;
    ck(pass == want, path.filename().string());
  }
  ck(n == 12, "12 taint programs");
  return ck.outcome(std::to_string(agree) + "/" + std::to_string(n) +
                    " expected verdicts; the bytecode benchmark table is not reproduced");
}

}  // namespace

std::vector<Criterion> criteria() {
  return {
      {1, "linked list effects", 1, linked_list},
      {2, "let precision", 1, let_precision},
      {3, "region narrowing", 1, narrowing},
      {4, "serve end to end", 2, serve},
      {5, "algebra laws", 60, laws},
      {6, "omega versus naive gfp", 1, remark_precision},
      {7, "soundness corpus", 60, soundness},
      {8, "solver invariance and fixed point", 10, solver_laws},
      {9, "taint mini corpus", 10, taint},
  };
}

}  // namespace acceptance
