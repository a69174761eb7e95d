#include "guidecheck/effect/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "guidecheck/error.hpp"

namespace guidecheck {

OmegaLang OmegaLang::universal(int k) {
  OmegaLang x(RegLang::universal(k));
  x.add_pair(RegLang::epsilon(k), RegLang::universal(k));
  return x;
}

void OmegaLang::add_pair(const RegLang& u, const RegLang& v) {
  RegLang vv = v.nonempty();
  if (u.is_empty() || vv.is_empty()) return;
  std::pair<RegLang, RegLang> p{u, std::move(vv)};
  auto it = std::lower_bound(inf_.begin(), inf_.end(), p);
  if (it == inf_.end() || *it != p) inf_.insert(it, std::move(p));
}

OmegaLang OmegaLang::unite(const OmegaLang& o) const {
  OmegaLang out(fin_.unite(o.fin_));
  out.inf_ = inf_;
  for (auto& [u, v] : o.inf_) out.add_pair(u, v);
  return out;
}

bool OmegaLang::contains_lasso(const Word& u, const Word& v) const {
  for (auto& [ul, vl] : inf_)
    if (lasso_in_pair(ul, vl, u, v)) return true;
  return false;
}

bool lasso_in_pair(const RegLang& ul, const RegLang& vl, const Word& u, const Word& v) {
  if (v.empty()) throw UsageError("lasso period must be nonempty");
  const int len = static_cast<int>(u.size() + v.size());
  auto letter_at = [&](int p) { return p < static_cast<int>(u.size()) ? u[p] : v[p - u.size()]; };
  auto next_pos = [&](int p) { return p + 1 < len ? p + 1 : static_cast<int>(u.size()); };
  // Positions after which a U-prefix ends.
  std::vector<char> start(len, 0);
  {
    std::set<std::pair<int, int>> seen;
    int p = 0, s = 0;
    while (seen.insert({p, s}).second) {
      if (ul.accepting(s)) start[p] = 1;
      s = ul.next(s, letter_at(p));
      p = next_pos(p);
    }
  }
  // Edges p -> p' when a nonempty V-word spans from p to p'.
  std::vector<std::vector<int>> succ(len);
  for (int p0 = 0; p0 < len; ++p0) {
    std::set<std::pair<int, int>> seen;
    std::vector<char> target(len, 0);
    int p = p0, s = 0;
    while (true) {
      s = vl.next(s, letter_at(p));
      p = next_pos(p);
      if (!seen.insert({p, s}).second) break;
      if (vl.accepting(s)) target[p] = 1;
    }
    for (int t = 0; t < len; ++t)
      if (target[t]) succ[p0].push_back(t);
  }
  // Keep positions with an infinite path: iteratively prune dead ends.
  std::vector<char> alive(len, 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (int p = 0; p < len; ++p) {
      if (!alive[p]) continue;
      bool any = false;
      for (int t : succ[p]) any = any || alive[t];
      if (!any) {
        alive[p] = 0;
        changed = true;
      }
    }
  }
  for (int p = 0; p < len; ++p)
    if (start[p] && alive[p]) return true;
  return false;
}

OmegaLang concat(const RegLang& u, const OmegaLang& x) {
  OmegaLang out(u.concat(x.fin()));
  for (auto& [p, v] : x.inf()) out.add_pair(u.concat(p), v);
  return out;
}

OmegaLang omega(const RegLang& u) {
  const int k = u.letters();
  OmegaLang out(u.has_epsilon() ? u.star() : RegLang::empty(k));
  out.add_pair(RegLang::epsilon(k), u);
  return out;
}

bool bounded_equiv(const OmegaLang& a, const OmegaLang& b, int bound) {
  return bounded_leq(a, b, bound) && bounded_leq(b, a, bound);
}

bool bounded_leq(const OmegaLang& a, const OmegaLang& b, int bound) {
  const int k = a.letters();
  auto words = words_up_to(k, bound);
  for (auto& w : words)
    if (a.contains(w) && !b.contains(w)) return false;
  if (a.inf().empty()) return true;
  for (auto& u : words)
    for (auto& v : words) {
      if (v.empty()) continue;
      if (a.contains_lasso(u, v) && !b.contains_lasso(u, v)) return false;
    }
  return true;
}

namespace {

RegLang paths_between(const GuidelineAutomaton& g, int from, int to) {
  Nfa n(g.alphabet().size());
  for (int q = 0; q < g.size(); ++q) n.add_state(q == to);
  for (auto& t : g.transitions()) n.add_edge(t.from, t.letter, t.to);
  n.starts = {from};
  return RegLang::determinize(n);
}

}  // namespace

OmegaLang guideline_language(const GuidelineAutomaton& g) {
  Nfa n(g.alphabet().size());
  for (int q = 0; q < g.size(); ++q) n.add_state((g.accepting() & bit(q)) != 0);
  for (auto& t : g.transitions()) n.add_edge(t.from, t.letter, t.to);
  for (int q = 0; q < g.size(); ++q)
    if (g.initial() & bit(q)) n.starts.push_back(q);
  OmegaLang out(RegLang::determinize(n));
  for (int q0 = 0; q0 < g.size(); ++q0) {
    if (!(g.initial() & bit(q0))) continue;
    for (int f = 0; f < g.size(); ++f)
      if (g.accepting() & bit(f)) out.add_pair(paths_between(g, q0, f), paths_between(g, f, f));
  }
  return out;
}

MixAbs abstract_language(const ProfileDomain& d, const OmegaLang& x) {
  MixAbs out{d.from_language(x.fin()), {}};
  for (auto& [u, v] : x.inf()) {
    MixAbs part = d.concat(d.from_language(u), d.omega(d.from_language(v)));
    out = d.join(out, MixAbs{d.bottom(), part.inf});
  }
  return out;
}

OmegaLang concretize(const ProfileDomain& d, const MixAbs& x) {
  OmegaLang out(d.gamma(x.fin));
  for (auto val : x.inf)
    for (auto& [u, v] : d.gamma_pairs(val)) out.add_pair(u, v);
  return out;
}

std::string OracleDomain::show(const Inf& v) const {
  std::string out = v.fin().is_empty() ? "" : v.fin().to_regex(sigma_);
  for (auto& [u, w] : v.inf()) {
    if (!out.empty()) out += " | ";
    std::string stem = u.contains({}) && u.subset_of(RegLang::epsilon(k())) ? "" : "(" + u.to_regex(sigma_) + ")";
    out += stem + "(" + w.to_regex(sigma_) + ")^w";
  }
  return out.empty() ? "{}" : out;
}

}  // namespace guidecheck
