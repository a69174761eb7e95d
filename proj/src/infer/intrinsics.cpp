#include "guidecheck/infer/intrinsics.hpp"

#include <sstream>

#include "guidecheck/effect/automaton.hpp"
#include "guidecheck/error.hpp"

namespace guidecheck {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

[[noreturn]] void config_fail(const std::string& origin, int line, const std::string& msg) {
  throw InputError(origin + ":" + std::to_string(line) + ": " + msg);
}

// Splits a comma-separated list whose items may contain parentheses.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

bool IntrinsicRule::matches(const std::vector<Region>& actual) const {
  if (actual.size() != args.size()) return false;
  for (size_t i = 0; i < args.size(); ++i)
    if (disjoint(args[i], actual[i])) return false;
  return true;
}

bool Intrinsics::covers(const std::string& declaring, const std::string& m) const {
  for (const auto& r : rules_)
    if (r.cls == declaring && r.method == m) return true;
  return false;
}

std::vector<const IntrinsicRule*> Intrinsics::rules_for(const std::string& declaring,
                                                        const std::string& m) const {
  std::vector<const IntrinsicRule*> out;
  for (const auto& r : rules_)
    if (r.cls == declaring && r.method == m) out.push_back(&r);
  return out;
}

bool Intrinsics::dispatches_to(const fj::Program& p, const std::string& c, const std::string& m) const {
  if (rules_.empty() || !p.is_declared(c)) return false;
  auto ref = p.find_method(c, m);
  return ref && covers(ref->declaring, m);
}

Intrinsics parse_intrinsics(const std::string& text, const std::string& origin, const fj::Program& p,
                            const Alphabet& sigma) {
  std::vector<IntrinsicRule> rules;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    IntrinsicRule rule;
    rule.line = lineno;
    size_t arrow = line.find("->");
    if (arrow == std::string::npos) config_fail(origin, lineno, "expected '->'");
    std::string lhs = trim(line.substr(0, arrow));
    std::string rhs = trim(line.substr(arrow + 2));
    size_t dot = lhs.find('.');
    size_t open = lhs.find('(');
    if (dot == std::string::npos || open == std::string::npos || open < dot || lhs.back() != ')')
      config_fail(origin, lineno, "expected 'Class.method(args)'");
    rule.cls = trim(lhs.substr(0, dot));
    rule.method = trim(lhs.substr(dot + 1, open - dot - 1));
    if (!p.is_declared(rule.cls)) config_fail(origin, lineno, "undeclared class '" + rule.cls + "'");
    const auto& decl = p.decl(rule.cls);
    const fj::MethodDecl* md = nullptr;
    for (const auto& m : decl.methods)
      if (m.name == rule.method) md = &m;
    if (!md) config_fail(origin, lineno, "class '" + rule.cls + "' declares no method '" + rule.method + "'");
    auto check_region = [&](const Region& r) {
      if (r.kind == Region::CreatedAt && !p.labels().count(r.label))
        config_fail(origin, lineno, "unknown label '" + r.label + "'");
      return r;
    };
    try {
      for (const auto& a : split_args(lhs.substr(open + 1, lhs.size() - open - 2)))
        rule.args.push_back(check_region(parse_region(a)));
    } catch (const InputError& e) {
      config_fail(origin, lineno, e.what());
    }
    if (rule.args.size() != md->params.size())
      config_fail(origin, lineno, "method '" + rule.method + "' takes " + std::to_string(md->params.size()) +
                                      " arguments");
    std::string ret_part = rhs, throw_part;
    size_t th = rhs.find(" throws ");
    if (th != std::string::npos) {
      ret_part = trim(rhs.substr(0, th));
      throw_part = trim(rhs.substr(th + 8));
    }
    auto region_and_regex = [&](const std::string& part, const char* kw, Region& reg, RegLang& lang) {
      std::istringstream ps(part);
      std::string rtext, word;
      ps >> rtext;
      try {
        reg = check_region(parse_region(rtext));
      } catch (const InputError& e) {
        config_fail(origin, lineno, e.what());
      }
      std::string rest;
      std::getline(ps, rest);
      rest = trim(rest);
      if (kw) {
        std::string k(kw);
        if (rest.compare(0, k.size(), k) != 0) config_fail(origin, lineno, "expected '" + k + "'");
        rest = trim(rest.substr(k.size()));
      }
      try {
        lang = parse_regex(rest, sigma);
      } catch (const InputError& e) {
        config_fail(origin, lineno, e.what());
      }
    };
    region_and_regex(ret_part, "emits", rule.ret, rule.emits);
    if (!throw_part.empty()) {
      Region tr;
      region_and_regex(throw_part, nullptr, tr, rule.throws);
      if (tr.kind == Region::Null) config_fail(origin, lineno, "cannot throw null");
      rule.throw_region = tr;
    } else {
      rule.throws = RegLang::empty(sigma.size());
    }
    rules.push_back(std::move(rule));
  }
  return Intrinsics(std::move(rules));
}

Intrinsics load_config(const std::string& path, const fj::Program& p, const Alphabet& sigma) {
  return parse_intrinsics(read_file(path), path, p, sigma);
}

}  // namespace guidecheck
