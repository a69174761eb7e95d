#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guidecheck/effect/automaton.hpp"
#include "guidecheck/infer/intrinsics.hpp"
#include "guidecheck/infer/region.hpp"
#include "guidecheck/interp/interp.hpp"
#include "guidecheck/lang/ast.hpp"

namespace guidecheck {

enum class Mode { Abstract, Concrete };

struct AnalyzeOptions {
  Mode mode = Mode::Abstract;
  int fuel = 12;
  /// `Class.method`; empty means every typed signature is reported.
  std::vector<std::string> entries;
  bool demand_driven = false;
  /// Iteration cap of the concrete-language inference.
  int concrete_cap = 16;
  /// Words and lassos up to this length decide concrete infinitary verdicts.
  int concrete_bound = 4;
};

struct SigReport {
  Sig sig;
  bool terminating_ok = true;
  bool throws_ok = true;
  bool infinite_ok = true;
  std::string terminating;
  std::string throws;
  std::string infinite;

  bool pass() const { return terminating_ok && throws_ok && infinite_ok; }
};

struct Counterexample {
  enum Kind { Finite, Prefix, Lasso };
  Kind kind = Finite;
  std::string entry;
  interp::ChoiceScript script;
  Word trace;
  /// Length of the shortest prefix no accepted word extends; -1 if none.
  int violation_position = -1;
  Word stem, cycle;
  std::string explanation;

  std::string kind_name() const;
};

struct Report {
  bool pass = true;
  Mode mode = Mode::Abstract;
  bool capped = false;
  int iterations = 0;
  std::vector<SigReport> signatures;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> notes;
};

struct Inputs {
  fj::Program program;
  GuidelineAutomaton guideline;
  Intrinsics intrinsics;
};

/// Parses the program over the guideline's alphabet and the optional
/// intrinsics config. Throws InputError on any failure, including FJ type
/// errors.
Inputs load_inputs(const std::vector<std::string>& program_paths, const std::string& guideline_path,
                   const std::optional<std::string>& config_path);

/// (C, Unknown, m, Unknown...) for `C.m`.
Sig entry_signature(const fj::Program& p, const std::string& entry);

Report analyze(const Inputs& in, const AnalyzeOptions& opt = {});

/// Bounded search for an execution of `entry` rejected by the guideline.
/// Every result is replayed and re-checked before it is returned.
std::optional<Counterexample> find_counterexample(const fj::Program& p, const GuidelineAutomaton& g,
                                                  const std::string& entry, int fuel,
                                                  const Intrinsics* intrinsics = nullptr);

/// Re-runs the script and re-checks the rejection.
bool validate_counterexample(const fj::Program& p, const GuidelineAutomaton& g, const Counterexample& c,
                             int fuel, const Intrinsics* intrinsics = nullptr);

std::string render_text(const Report& r, const Alphabet& sigma);
std::string render_json(const Report& r, const Alphabet& sigma);

}  // namespace guidecheck
