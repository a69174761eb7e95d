#include "guidecheck/check/analyze.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "guidecheck/effect/oracle.hpp"
#include "guidecheck/effect/profile.hpp"
#include "guidecheck/infer/infer.hpp"
#include "guidecheck/lang/parser.hpp"
#include "guidecheck/lang/typecheck.hpp"
#include "guidecheck/solver/solver.hpp"
#include "json.hpp"

namespace guidecheck {

namespace {

using Json = nlohmann::ordered_json;

std::string show_word(const Alphabet& sigma, const Word& w) { return w.empty() ? "ε" : sigma.show(w); }

constexpr size_t kMaxRendering = 200;

std::string clip(std::string s) {
  if (s.size() <= kMaxRendering) return s;
  size_t cut = kMaxRendering;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return s.substr(0, cut) + " ...";
}

template <class D>
std::string render_regions(const D& d, const RegExpr<D>& e) {
  if (e.empty()) return "∅";
  std::string out;
  for (const auto& [r, u] : e) {
    if (!out.empty()) out += " | ";
    out += r.str() + " & " + d.show(u);
  }
  return clip(out);
}

std::vector<Sig> typed_signatures(const RegionMeta& meta, const std::vector<Sig>& all) {
  std::vector<Sig> out;
  for (const Sig& s : all)
    if (meta.in_cls(s.cls, s.recv)) out.push_back(s);
  return out;
}

bool all_unknown(const Sig& s) {
  if (s.recv != Region::unknown()) return false;
  return std::all_of(s.args.begin(), s.args.end(), [](const Region& r) { return r == Region::unknown(); });
}

Report analyze_abstract(const Inputs& in, const AnalyzeOptions& opt, const std::vector<Sig>& entries) {
  const auto& p = in.program;
  ProfileDomain d(in.guideline);
  Engine<ProfileDomain> engine(p, d, &in.intrinsics);
  InferOptions io;
  io.demand_driven = opt.demand_driven;
  io.entries = entries;
  auto res = engine.infer(io);
  auto sys = equation_system(res.table);
  auto eta = solve(d, sys);

  Report r;
  r.mode = Mode::Abstract;
  r.iterations = res.iterations;
  r.capped = res.capped;
  std::vector<Sig> all;
  for (const auto& [s, e] : res.table.m) all.push_back(s);
  const std::vector<Sig> shown = entries.empty() ? typed_signatures(engine.meta(), all) : entries;
  for (const Sig& s : shown) {
    const auto& e = res.table.m.at(s);
    SigReport sr;
    sr.sig = s;
    for (const auto& [reg, u] : e.t) sr.terminating_ok = sr.terminating_ok && d.accepts(u);
    for (const auto& [reg, u] : e.h) sr.throws_ok = sr.throws_ok && d.accepts(u);
    sr.infinite_ok = d.accepts(eta.at(s));
    sr.terminating = render_regions(d, e.t);
    sr.throws = render_regions(d, e.h);
    sr.infinite = d.is_bottom(eta.at(s)) ? "∅" : d.show(eta.at(s));
    r.signatures.push_back(std::move(sr));
  }
  r.notes.push_back("abstract effects are shown as one shortest witness per abstract class");
  if (res.capped) r.notes.push_back("inference hit the iteration cap; verdicts are not authoritative");
  return r;
}

Report analyze_concrete(const Inputs& in, const AnalyzeOptions& opt, const std::vector<Sig>& entries) {
  const auto& p = in.program;
  const auto& g = in.guideline;
  OracleDomain d(g.alphabet(), opt.concrete_bound);
  Engine<OracleDomain> engine(p, d, &in.intrinsics);
  InferOptions io;
  io.demand_driven = opt.demand_driven;
  io.entries = entries;
  io.max_iterations = opt.concrete_cap;
  auto res = engine.infer(io);
  auto sys = equation_system(res.table);
  auto eta = solve(d, sys);
  const RegLang accepted = guideline_language(g).fin();
  const int k = g.alphabet().size();

  Report r;
  r.mode = Mode::Concrete;
  r.iterations = res.iterations;
  r.capped = res.capped;
  std::vector<Sig> all;
  for (const auto& [s, e] : res.table.m) all.push_back(s);
  const std::vector<Sig> shown = entries.empty() ? typed_signatures(engine.meta(), all) : entries;
  const auto words = words_up_to(k, opt.concrete_bound);
  for (const Sig& s : shown) {
    const auto& e = res.table.m.at(s);
    SigReport sr;
    sr.sig = s;
    for (const auto& [reg, u] : e.t) sr.terminating_ok = sr.terminating_ok && u.subset_of(accepted);
    for (const auto& [reg, u] : e.h) sr.throws_ok = sr.throws_ok && u.subset_of(accepted);
    const OmegaLang& v = eta.at(s);
    sr.infinite_ok = v.fin().subset_of(accepted);
    for (const auto& u : words)
      for (const auto& c : words)
        if (sr.infinite_ok && !c.empty() && v.contains_lasso(u, c) && !g.accepts_lasso(u, c))
          sr.infinite_ok = false;
    sr.terminating = render_regions(d, e.t);
    sr.throws = render_regions(d, e.h);
    sr.infinite = d.is_bottom(v) ? "∅" : clip(d.show(v));
    r.signatures.push_back(std::move(sr));
  }
  r.notes.push_back("concrete mode is advisory; infinitary verdicts are checked on lassos up to length " +
                    std::to_string(opt.concrete_bound));
  if (res.capped)
    r.notes.push_back("concrete inference did not stabilize within " + std::to_string(opt.concrete_cap) +
                      " iterations; effects shown are partial");
  return r;
}

}  // namespace

std::string Counterexample::kind_name() const {
  switch (kind) {
    case Finite: return "finite";
    case Prefix: return "prefix";
    case Lasso: return "lasso";
  }
  return "?";
}

Inputs load_inputs(const std::vector<std::string>& program_paths, const std::string& guideline_path,
                   const std::optional<std::string>& config_path) {
  if (program_paths.empty()) throw InputError("no program files given");
  GuidelineAutomaton g = load_guideline(guideline_path);
  std::vector<fj::SourceFile> files;
  for (const auto& path : program_paths) files.push_back({path, read_file(path)});
  fj::Program p = fj::parse_program(files, g.alphabet());
  auto errors = fj::fj_typecheck(p);
  if (!errors.empty()) {
    std::string msg = errors.front().str();
    if (errors.size() > 1) msg += " (and " + std::to_string(errors.size() - 1) + " more type errors)";
    throw InputError(msg);
  }
  Intrinsics intr;
  if (config_path) intr = load_config(*config_path, p, g.alphabet());
  return Inputs{std::move(p), std::move(g), std::move(intr)};
}

Sig entry_signature(const fj::Program& p, const std::string& entry) {
  auto dot = entry.find('.');
  if (dot == std::string::npos) throw InputError("entry '" + entry + "' must have the form Class.method");
  std::string cls = entry.substr(0, dot), m = entry.substr(dot + 1);
  if (!p.is_declared(cls)) throw InputError("unknown entry class '" + cls + "'");
  auto ref = p.find_method(cls, m);
  if (!ref) throw InputError("unknown entry method '" + entry + "'");
  return Sig{cls, Region::unknown(), m, std::vector<Region>(ref->decl->params.size(), Region::unknown())};
}

Report analyze(const Inputs& in, const AnalyzeOptions& opt) {
  std::vector<Sig> entries;
  for (const auto& e : opt.entries) entries.push_back(entry_signature(in.program, e));
  if (opt.demand_driven && entries.empty())
    for (const auto& c : in.program.class_names())
      for (const auto& m : in.program.methods_of(c)) entries.push_back(entry_signature(in.program, c + "." + m));
  Report r = opt.mode == Mode::Abstract ? analyze_abstract(in, opt, entries) : analyze_concrete(in, opt, entries);
  std::set<std::pair<std::string, std::string>> searched;
  for (const auto& s : r.signatures) {
    if (s.pass()) continue;
    r.pass = false;
    if (!all_unknown(s.sig) || !searched.insert({s.sig.cls, s.sig.method}).second) continue;
    if (in.intrinsics.dispatches_to(in.program, s.sig.cls, s.sig.method)) continue;
    auto c = find_counterexample(in.program, in.guideline, s.sig.cls + "." + s.sig.method, opt.fuel,
                                 &in.intrinsics);
    if (c) r.counterexamples.push_back(std::move(*c));
  }
  if (!r.pass && r.counterexamples.empty())
    r.notes.push_back("no counterexample found within fuel " + std::to_string(opt.fuel) +
                      "; the bounded search is incomplete");
  return r;
}

std::optional<Counterexample> find_counterexample(const fj::Program& p, const GuidelineAutomaton& g,
                                                  const std::string& entry, int fuel,
                                                  const Intrinsics* intrinsics) {
  Sig s = entry_signature(p, entry);
  interp::Interpreter in(p, intrinsics);
  auto runs = interp::enumerate_traces(in, s.cls, s.method, fuel);
  std::optional<Counterexample> prefix, lasso;
  for (const auto& run : runs) {
    const auto& o = run.outcome;
    if (o.kind == interp::Outcome::Terminated || o.kind == interp::Outcome::Thrown) {
      if (!g.accepts_finite(o.trace)) {
        Counterexample c;
        c.kind = Counterexample::Finite;
        c.entry = entry;
        c.script = o.script;
        c.trace = o.trace;
        c.violation_position = g.violation_position(o.trace);
        c.explanation = std::string(o.kind == interp::Outcome::Thrown ? "exceptional" : "terminating") +
                        " run whose trace the guideline rejects";
        if (validate_counterexample(p, g, c, fuel, intrinsics)) return c;
      }
    }
    if (o.kind == interp::Outcome::OutOfFuel && !prefix) {
      int pos = g.violation_position(o.trace);
      if (pos >= 0) {
        Counterexample c;
        c.kind = Counterexample::Prefix;
        c.entry = entry;
        c.script = o.script;
        c.trace = o.trace;
        c.violation_position = pos;
        c.explanation = "run prefix that no accepted trace extends";
        if (validate_counterexample(p, g, c, fuel, intrinsics)) prefix = c;
      }
    }
    if (o.lasso && !lasso) {
      const auto& l = *o.lasso;
      bool rejected = l.cycle.empty() ? !g.accepts_finite(l.stem) : !g.accepts_lasso(l.stem, l.cycle);
      if (rejected) {
        Counterexample c;
        c.kind = Counterexample::Lasso;
        c.entry = entry;
        c.script = l.stem_choices;
        for (int i = 0; i < 3; ++i) c.script.insert(c.script.end(), l.cycle_choices.begin(), l.cycle_choices.end());
        c.stem = l.stem;
        c.cycle = l.cycle;
        // The trace the script drives: stem and three rounds of the cycle.
        c.trace = l.stem;
        for (int i = 0; i < 3; ++i) c.trace.insert(c.trace.end(), l.cycle.begin(), l.cycle.end());
        c.violation_position = g.violation_position(c.trace);
        c.explanation = l.cycle.empty()
                            ? "a call configuration repeats without events; the silent divergence leaves a "
                              "finite trace the guideline rejects"
                            : "a call configuration repeats; repeating the cycle runs forever with trace "
                              "stem·cycle^ω, which the guideline rejects";
        if (validate_counterexample(p, g, c, fuel, intrinsics)) lasso = c;
      }
    }
  }
  if (prefix) return prefix;
  return lasso;
}

bool validate_counterexample(const fj::Program& p, const GuidelineAutomaton& g, const Counterexample& c,
                             int fuel, const Intrinsics* intrinsics) {
  Sig s = entry_signature(p, c.entry);
  interp::Interpreter in(p, intrinsics);
  switch (c.kind) {
    case Counterexample::Finite: {
      auto o = in.run_entry(s.cls, s.method, fuel, c.script);
      return (o.kind == interp::Outcome::Terminated || o.kind == interp::Outcome::Thrown) && o.trace == c.trace &&
             !g.accepts_finite(o.trace);
    }
    case Counterexample::Prefix: {
      auto o = in.run_entry(s.cls, s.method, fuel, c.script);
      if (o.trace != c.trace) return false;
      return !g.prefix_extensible(Word(c.trace.begin(), c.trace.begin() + c.violation_position));
    }
    case Counterexample::Lasso: {
      // Replaying the stem and three rounds of the cycle must reproduce
      // stem·cycle³ and find the same repetition.
      auto o = in.run_entry(s.cls, s.method, fuel * 8 + 8, c.script);
      if (!o.lasso || o.lasso->stem != c.stem || o.lasso->cycle != c.cycle) return false;
      Word expect = c.stem;
      for (int i = 0; i < 3; ++i) expect.insert(expect.end(), c.cycle.begin(), c.cycle.end());
      if (o.trace.size() < expect.size() || !std::equal(expect.begin(), expect.end(), o.trace.begin()))
        return false;
      return c.cycle.empty() ? !g.accepts_finite(c.stem) : !g.accepts_lasso(c.stem, c.cycle);
    }
  }
  return false;
}

std::string render_text(const Report& r, const Alphabet& sigma) {
  std::ostringstream out;
  out << "verdict: " << (r.pass ? "pass" : "fail") << "\n";
  out << "mode: " << (r.mode == Mode::Abstract ? "abstract" : "concrete") << ", iterations: " << r.iterations
      << "\n\n";
  for (const auto& s : r.signatures) {
    out << (s.pass() ? "PASS " : "FAIL ") << s.sig.str() << "\n";
    out << "  terminates: " << (s.terminating_ok ? "ok  " : "FAIL") << "  " << s.terminating << "\n";
    out << "  throws:     " << (s.throws_ok ? "ok  " : "FAIL") << "  " << s.throws << "\n";
    out << "  diverges:   " << (s.infinite_ok ? "ok  " : "FAIL") << "  " << s.infinite << "\n";
  }
  for (const auto& c : r.counterexamples) {
    out << "\ncounterexample (" << c.kind_name() << ") for " << c.entry << "\n";
    out << "  script: [";
    for (size_t i = 0; i < c.script.size(); ++i) out << (i ? " " : "") << c.script[i];
    out << "]\n  trace: " << show_word(sigma, c.trace) << "\n";
    if (c.kind == Counterexample::Lasso)
      out << "  lasso: " << show_word(sigma, c.stem) << " (" << show_word(sigma, c.cycle) << ")^ω\n";
    if (c.violation_position >= 0) out << "  violated at: " << c.violation_position << "\n";
    out << "  " << c.explanation << "\n";
  }
  if (!r.counterexamples.empty()) out << "\ncounterexamples come from a bounded search over intrinsic choices\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

std::string render_json(const Report& r, const Alphabet& sigma) {
  auto words = [&](const Word& w) {
    Json a = Json::array();
    for (Event e : w) a.push_back(sigma.name(e));
    return a;
  };
  Json j;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["mode"] = r.mode == Mode::Abstract ? "abstract" : "concrete";
  j["advisory"] = r.mode == Mode::Concrete;
  j["iterations"] = r.iterations;
  j["capped"] = r.capped;
  j["signatures"] = Json::array();
  for (const auto& s : r.signatures) {
    Json args = Json::array();
    for (const auto& a : s.sig.args) args.push_back(a.str());
    j["signatures"].push_back({{"class", s.sig.cls},
                               {"region", s.sig.recv.str()},
                               {"method", s.sig.method},
                               {"args", args},
                               {"terminating", s.terminating_ok ? "pass" : "fail"},
                               {"throws", s.throws_ok ? "pass" : "fail"},
                               {"infinite", s.infinite_ok ? "pass" : "fail"},
                               {"effects",
                                {{"terminating", s.terminating}, {"throws", s.throws}, {"infinite", s.infinite}}}});
  }
  j["counterexamples"] = Json::array();
  for (const auto& c : r.counterexamples) {
    Json cj = {{"entry", c.entry},     {"kind", c.kind_name()},
               {"script", c.script},   {"trace", words(c.trace)},
               {"violated_at", c.violation_position >= 0 ? Json(c.violation_position) : Json(nullptr)},
               {"search", "bounded"},  {"explanation", c.explanation}};
    if (c.kind == Counterexample::Lasso) {
      cj["stem"] = words(c.stem);
      cj["cycle"] = words(c.cycle);
    }
    j["counterexamples"].push_back(std::move(cj));
  }
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

}  // namespace guidecheck
