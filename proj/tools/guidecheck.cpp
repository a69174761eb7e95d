// guidecheck: infer trace effects of an FJ program and check them against a
// guideline automaton.
//
//   guidecheck analyze --program a.fj [b.fj ...] --guideline g.gdl [--config c.cfg]
//                      [--mode abstract|concrete] [--fuel N] [--entry Class.method]...
//                      [--demand-driven] [--report text|json] [--out path]
//
// Exit status: 0 pass, 1 guideline violation, 2 input error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "guidecheck/check/analyze.hpp"

using namespace guidecheck;

int main(int argc, char** argv) {
  CLI::App app{"Region-based trace effect analysis against guideline automata"};
  app.require_subcommand(1);
  auto* cmd = app.add_subcommand("analyze", "infer effects and check them against a guideline");

  std::vector<std::string> programs;
  std::string guideline, config, mode = "abstract", report = "text", out;
  AnalyzeOptions opt;
  cmd->add_option("--program", programs, "FJ source files")->required()->expected(1, -1);
  cmd->add_option("--guideline", guideline, "guideline automaton")->required();
  cmd->add_option("--config", config, "intrinsic effects config");
  cmd->add_option("--mode", mode, "abstract (authoritative) or concrete (advisory)")
      ->check(CLI::IsMember({"abstract", "concrete"}));
  cmd->add_option("--fuel", opt.fuel, "call budget of the counterexample search")->check(CLI::NonNegativeNumber);
  cmd->add_option("--entry", opt.entries, "entry method Class.method (repeatable)");
  cmd->add_flag("--demand-driven", opt.demand_driven, "only type signatures reachable from the entries");
  cmd->add_option("--report", report, "report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.mode = mode == "concrete" ? Mode::Concrete : Mode::Abstract;

  try {
    Inputs in = load_inputs(programs, guideline, config.empty() ? std::nullopt : std::optional(config));
    Report r = analyze(in, opt);
    const Alphabet& sigma = in.guideline.alphabet();
    std::string text = report == "json" ? render_json(r, sigma) : render_text(r, sigma);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw InputError("cannot write '" + out + "'");
      f << text;
    }
    return r.pass ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "guidecheck: " << e.what() << "\n";
    return 2;
  }
}
