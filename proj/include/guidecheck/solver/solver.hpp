#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guidecheck/effect/domain.hpp"
#include "guidecheck/effect/oracle.hpp"
#include "guidecheck/error.hpp"
#include "guidecheck/infer/region.hpp"
#include "guidecheck/infer/table.hpp"

namespace guidecheck {

/// δ = S_δ for every signature δ; S_δ is the call expression stored in M.
template <class D>
using EquationSystem = std::map<Sig, CallExpr<D>>;

template <class D>
using InfTyping = std::map<Sig, typename D::Inf>;

template <class D>
EquationSystem<D> equation_system(const ClassTableB<D>& table) {
  EquationSystem<D> sys;
  for (const auto& [s, e] : table.m) sys.emplace(s, e.s);
  return sys;
}

/// Restriction to the signatures reachable from `roots`.
template <class System>
System reachable_system(const System& sys, const std::vector<Sig>& roots) {
  System out;
  std::vector<Sig> work(roots.begin(), roots.end());
  while (!work.empty()) {
    Sig s = work.back();
    work.pop_back();
    if (out.count(s)) continue;
    auto it = sys.find(s);
    if (it == sys.end()) throw UsageError("equation system has no equation for " + s.str());
    out.emplace(s, it->second);
    for (const auto& [t, u] : it->second) work.push_back(t);
  }
  return out;
}

template <class System>
void check_closed(const System& sys) {
  for (const auto& [s, rhs] : sys)
    for (const auto& [t, u] : rhs)
      if (!sys.count(t)) throw UsageError("equation system is not closed: " + s.str() + " calls " + t.str());
}

/// Gaussian elimination: δ = A·δ ⊔ F becomes δ = A*·F ⊔ A^ω, which is then
/// substituted into every other equation. Variables are eliminated in
/// `order` (lexicographic if empty).
template <BuchiAlgebra D>
InfTyping<D> solve(const D& d, const EquationSystem<D>& sys, std::vector<Sig> order = {}) {
  check_closed(sys);
  if (order.empty())
    for (const auto& [s, rhs] : sys) order.push_back(s);
  if (order.size() != sys.size()) throw UsageError("elimination order must list every signature once");

  struct Linear {
    std::map<Sig, typename D::Fin> coef;
    typename D::Inf rest;
  };
  std::map<Sig, Linear> eqs;
  for (const auto& [s, rhs] : sys) {
    Linear l{{}, d.inf_bottom()};
    for (const auto& [t, u] : rhs) l.coef.emplace(t, u);
    eqs.emplace(s, std::move(l));
  }
  // Which equations mention a variable.
  std::map<Sig, std::set<Sig>> users;
  for (const auto& [s, l] : eqs)
    for (const auto& [t, u] : l.coef) users[t].insert(s);

  for (const Sig& x : order) {
    auto eq_it = eqs.find(x);
    if (eq_it == eqs.end()) throw UsageError("elimination order names unknown signature " + x.str());
    Linear& lx = eq_it->second;
    typename D::Fin a = d.bottom();
    if (auto c = lx.coef.find(x); c != lx.coef.end()) {
      a = c->second;
      lx.coef.erase(c);
    }
    users[x].erase(x);
    typename D::Fin as = d.star(a);
    for (auto& [t, u] : lx.coef) u = d.concat(as, u);
    lx.rest = d.join(d.concat(as, lx.rest), d.omega(a));

    for (const Sig& y : std::set<Sig>(users[x])) {
      Linear& ly = eqs.at(y);
      auto c = ly.coef.find(x);
      if (c == ly.coef.end()) continue;
      typename D::Fin b = c->second;
      ly.coef.erase(c);
      for (const auto& [t, u] : lx.coef) {
        typename D::Fin bu = d.concat(b, u);
        if (d.is_bottom(bu)) continue;
        auto [it, fresh] = ly.coef.try_emplace(t, bu);
        if (!fresh) it->second = d.join(it->second, bu);
        users[t].insert(y);
      }
      ly.rest = d.join(ly.rest, d.concat(b, lx.rest));
    }
    users[x].clear();
  }

  InfTyping<D> eta;
  for (auto& [s, l] : eqs) {
    if (!l.coef.empty()) throw UsageError("elimination left free variables in " + s.str());
    eta.emplace(s, std::move(l.rest));
  }
  return eta;
}

/// S_δ(η) for every δ.
template <BuchiAlgebra D>
InfTyping<D> substitute(const D& d, const EquationSystem<D>& sys, const InfTyping<D>& eta) {
  InfTyping<D> out;
  for (const auto& [s, rhs] : sys) {
    typename D::Inf v = d.inf_bottom();
    for (const auto& [t, u] : rhs) {
      auto it = eta.find(t);
      if (it == eta.end()) throw UsageError("assignment has no value for " + t.str());
      v = d.join(v, d.concat(u, it->second));
    }
    out.emplace(s, std::move(v));
  }
  return out;
}

struct ApproxResult {
  InfTyping<OracleDomain> eta;
  int steps = 0;
  bool stabilized = false;
};

/// η₀ = Σ^{≤ω} everywhere, η_{k+1} = S(η_k), until two consecutive
/// assignments agree up to bounded equivalence or `cap` steps are taken.
inline ApproxResult approx_eta(const OracleDomain& d, const EquationSystem<OracleDomain>& sys, int cap,
                               int bound = 6) {
  check_closed(sys);
  ApproxResult res;
  for (const auto& [s, rhs] : sys) res.eta.emplace(s, OmegaLang::universal(d.k()));
  while (res.steps < cap) {
    auto next = substitute(d, sys, res.eta);
    ++res.steps;
    bool same = true;
    for (const auto& [s, v] : next)
      if (!bounded_equiv(v, res.eta.at(s), bound)) {
        same = false;
        break;
      }
    res.eta = std::move(next);
    if (same) {
      res.stabilized = true;
      break;
    }
  }
  return res;
}

/// η_n after exactly n steps.
inline InfTyping<OracleDomain> approx_eta_n(const OracleDomain& d, const EquationSystem<OracleDomain>& sys,
                                            int n) {
  check_closed(sys);
  InfTyping<OracleDomain> eta;
  for (const auto& [s, rhs] : sys) eta.emplace(s, OmegaLang::universal(d.k()));
  for (int i = 0; i < n; ++i) eta = substitute(d, sys, eta);
  return eta;
}

}  // namespace guidecheck
