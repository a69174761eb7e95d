#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guidecheck/effect/domain.hpp"
#include "guidecheck/error.hpp"
#include "guidecheck/infer/intrinsics.hpp"
#include "guidecheck/infer/region.hpp"
#include "guidecheck/infer/table.hpp"
#include "guidecheck/lang/ast.hpp"

namespace guidecheck {

/// Typing result of an expression: terminating results, thrown exceptions,
/// method calls.
template <class D>
struct Typing {
  RegExpr<D> t;
  RegExpr<D> h;
  CallExpr<D> s;
};

struct InferOptions {
  /// Seed only `entries` and the signatures reached from them.
  bool demand_driven = false;
  std::vector<Sig> entries;
  int max_iterations = 10000;
};

template <class D>
struct InferResult {
  ClassTableB<D> table;
  int iterations = 0;
  bool capped = false;
};

struct WellTyped {
  bool ok = true;
  std::string message;
};

/// Entries r&U of H whose classes all lie below E are caught and removed.
template <class D>
RegExpr<D> except_filter(const D& d, const RegExpr<D>& h, const std::string& e, const fj::Program& p,
                         const RegionMeta& meta) {
  RegExpr<D> out;
  for (const auto& [r, u] : h) {
    const auto& cs = meta.cls(r);
    bool caught = std::all_of(cs.begin(), cs.end(), [&](const std::string& c) { return p.preceq(c, e); });
    if (!caught) out.add(d, r, u);
  }
  return out;
}

/// Fresh table: every field entry {Null}, every method entry empty. In
/// demand-driven mode only the entry signatures get method entries.
template <class D>
ClassTableB<D> init_table(const fj::Program& p, const RegionMeta& meta, const InferOptions& opt = {}) {
  ClassTableB<D> table;
  for (const auto& c : p.class_names())
    for (const auto& f : p.fields_of(c))
      for (const Region& r : meta.regions()) table.f[FieldKey{c, r, f.name}] = {Region::null()};
  if (opt.demand_driven) {
    for (const Sig& s : opt.entries) table.m.try_emplace(s);
    return table;
  }
  const auto& regions = meta.regions();
  for (const auto& c : p.class_names())
    for (const auto& m : p.methods_of(c)) {
      size_t arity = p.method_lookup(c, m).decl->params.size();
      std::vector<size_t> idx(arity, 0);
      for (;;) {
        std::vector<Region> args;
        for (size_t i : idx) args.push_back(regions[i]);
        for (const Region& r : regions) table.m.try_emplace(Sig{c, r, m, args});
        size_t k = 0;
        while (k < arity && ++idx[k] == regions.size()) idx[k++] = 0;
        if (k == arity) break;
      }
    }
  return table;
}

/// The algorithmic type-and-effect checker of one program over one domain.
template <BuchiAlgebra D>
class Engine {
 public:
  Engine(const fj::Program& p, const D& d, const Intrinsics* intr = nullptr)
      : p_(p), d_(d), intr_(intr), meta_(p) {}

  const RegionMeta& meta() const { return meta_; }
  const fj::Program& program() const { return p_; }

  bool is_intrinsic(const Sig& s) const {
    return intr_ && intr_->dispatches_to(p_, s.cls, s.method);
  }

  /// Effect of the configured rules for an intrinsic signature.
  MethodEntry<D> intrinsic_entry(const Sig& s) const {
    MethodEntry<D> e;
    if (!meta_.in_cls(s.cls, s.recv)) return e;
    auto declaring = p_.method_lookup(s.cls, s.method).declaring;
    for (const IntrinsicRule* rule : intr_->rules_for(declaring, s.method)) {
      if (!rule->matches(s.args)) continue;
      e.t.add(d_, rule->ret, d_.from_language(rule->emits));
      if (rule->throw_region) e.h.add(d_, *rule->throw_region, d_.from_language(rule->throws));
    }
    return e;
  }

  ClassTableB<D> init(const InferOptions& opt = {}) const {
    auto table = init_table<D>(p_, meta_, opt);
    seed_intrinsics(table);
    return table;
  }

  /// Types the body of signature s against `table`. With `frozen`, a needed
  /// field update is reported through `violation` instead of performed.
  Typing<D> type_body(const Sig& s, ClassTableB<D>& table, bool frozen = false,
                      std::string* violation = nullptr) {
    auto ref = p_.method_lookup(s.cls, s.method);
    const auto& md = *ref.decl;
    if (md.params.size() != s.args.size()) throw UsageError("arity mismatch for " + s.str());
    Env env;
    env["this"] = s.recv;
    for (size_t i = 0; i < md.params.size(); ++i) env[md.params[i].name] = s.args[i];
    table_ = &table;
    frozen_ = frozen;
    violation_ = violation;
    memo_.clear();
    auto out = typeff(env, md.body);
    table_ = nullptr;
    return out;
  }

  /// typeff on an arbitrary expression; may update table.f.
  Typing<D> typeff(const std::map<std::string, Region>& gamma, const fj::ExprPtr& e,
                   ClassTableB<D>& table) {
    table_ = &table;
    frozen_ = false;
    violation_ = nullptr;
    memo_.clear();
    auto out = typeff(gamma, e);
    table_ = nullptr;
    return out;
  }

  InferResult<D> infer(const InferOptions& opt = {}) {
    InferResult<D> res;
    res.table = init(opt);
    res.table = check_class_table(p_, meta_, d_, std::move(res.table));
    for (;;) {
      bool changed = false;
      std::vector<Sig> sigs;
      for (const auto& [s, e] : res.table.m) sigs.push_back(s);
      demand_ = opt.demand_driven;
      for (const Sig& s : sigs) {
        if (!meta_.in_cls(s.cls, s.recv) || is_intrinsic(s)) continue;
        size_t f_before = f_updates_;
        Typing<D> t = type_body(s, res.table);
        changed |= f_updates_ != f_before;
        auto& entry = res.table.m[s];
        for (const auto& [k, v] : t.t) changed |= entry.t.add(d_, k, v);
        for (const auto& [k, v] : t.h) changed |= entry.h.add(d_, k, v);
        for (const auto& [k, v] : t.s) changed |= entry.s.add(d_, k, v);
      }
      demand_ = false;
      changed |= res.table.m.size() != sigs.size();
      if (opt.demand_driven) seed_intrinsics(res.table);
      auto closed = check_class_table(p_, meta_, d_, res.table);
      if (!(closed == res.table)) {
        changed = true;
        res.table = std::move(closed);
      }
      ++res.iterations;
      if (!changed) break;
      if (res.iterations >= opt.max_iterations) {
        res.capped = true;
        break;
      }
    }
    return res;
  }

  /// Checks that the table types every body with F frozen.
  WellTyped check_well_typed(const ClassTableB<D>& table) {
    auto closed = check_class_table(p_, meta_, d_, table);
    if (!(closed == table)) return {false, "class table is not well-formed"};
    ClassTableB<D> work = table;
    for (const auto& [s, entry] : table.m) {
      if (!meta_.in_cls(s.cls, s.recv)) continue;
      if (is_intrinsic(s)) {
        if (!entry_leq(d_, intrinsic_entry(s), entry))
          return {false, s.str() + ": stored entry is below the configured intrinsic effect"};
        continue;
      }
      std::string violation;
      Typing<D> t = type_body(s, work, true, &violation);
      if (!violation.empty()) return {false, s.str() + ": " + violation};
      if (!leq(d_, t.t, entry.t)) return {false, s.str() + ": terminating effect T not covered"};
      if (!leq(d_, t.h, entry.h)) return {false, s.str() + ": exception effect H not covered"};
      if (!leq(d_, t.s, entry.s)) return {false, s.str() + ": call effect S not covered"};
      if (work.m.size() != table.m.size()) return {false, s.str() + ": calls a signature missing from M"};
    }
    return {};
  }

 private:
  using Env = std::map<std::string, Region>;
  using MemoKey = std::pair<const fj::Expr*, std::vector<Region>>;

  void seed_intrinsics(ClassTableB<D>& table) const {
    if (!intr_ || intr_->empty()) return;
    for (auto& [s, e] : table.m)
      if (is_intrinsic(s)) entry_join_into(d_, e, intrinsic_entry(s));
  }

  const Region& lookup(const Env& env, const std::string& x, const fj::ExprPtr& e) const {
    auto it = env.find(x);
    if (it == env.end()) throw UsageError(e->pos.str() + ": unbound variable '" + x + "'");
    return it->second;
  }

  typename D::Fin letter(const std::string& event) const {
    if constexpr (requires { d_.alphabet(); }) {
      auto a = d_.alphabet().find(event);
      if (!a) throw InputError("event '" + event + "' is not in the guideline alphabet");
      return d_.letter(*a);
    } else {
      return d_.letter(0);
    }
  }

  const std::vector<std::string>& fv(const fj::ExprPtr& e) {
    auto it = fv_.find(e.get());
    if (it != fv_.end()) return it->second;
    auto s = fj::free_vars(e);
    return fv_.emplace(e.get(), std::vector<std::string>(s.begin(), s.end())).first->second;
  }

  void add_signature(const Sig& s) {
    auto& m = table_->m;
    if (m.count(s)) return;
    for (const auto& c : p_.class_names()) {
      if (!p_.preceq(c, s.cls)) continue;
      Sig related = s;
      related.cls = c;
      m.try_emplace(related);
    }
    m.try_emplace(s);
  }

  Typing<D> typeff(const Env& env, const fj::ExprPtr& e) {
    MemoKey key{e.get(), {}};
    for (const auto& x : fv(e)) key.second.push_back(lookup(env, x, e));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    size_t f_before = f_updates_;
    Typing<D> out = compute(env, e);
    if (f_updates_ != f_before) memo_.clear();
    memo_.emplace(std::move(key), out);
    return out;
  }

  Typing<D> unit_at(const Region& r) const {
    Typing<D> out;
    out.t.add(d_, r, d_.unit());
    return out;
  }

  std::set<Region>& field_entry(const std::string& c, const Region& r, const std::string& f,
                                const fj::ExprPtr& e) {
    auto it = table_->f.find(FieldKey{c, r, f});
    if (it == table_->f.end())
      throw UsageError(e->pos.str() + ": no field '" + f + "' in class '" + c + "'");
    return it->second;
  }

  Typing<D> compute(const Env& env, const fj::ExprPtr& e) {
    using namespace fj;
    const Node& n = e->node;
    if (auto* x = std::get_if<Var>(&n)) return unit_at(lookup(env, x->name, e));
    if (std::get_if<NullLit>(&n)) return unit_at(Region::null());
    if (auto* x = std::get_if<New>(&n)) return unit_at(Region::created_at(x->label));
    if (auto* x = std::get_if<Emit>(&n)) {
      Typing<D> out;
      out.t.add(d_, Region::null(), letter(x->event));
      return out;
    }
    if (auto* x = std::get_if<Cast>(&n)) return typeff(env, x->operand);
    if (auto* x = std::get_if<GetField>(&n)) {
      Typing<D> out;
      for (const Region& s : field_entry(x->recv_class, lookup(env, x->recv, e), x->field, e))
        out.t.add(d_, s, d_.unit());
      return out;
    }
    if (auto* x = std::get_if<SetField>(&n)) {
      const Region& rx = lookup(env, x->recv, e);
      const Region& ry = lookup(env, x->value, e);
      for (const Region& r : meta_.regions()) {
        if (disjoint(r, rx)) continue;
        auto& entry = field_entry(x->recv_class, r, x->field, e);
        if (entry.count(ry)) continue;
        if (frozen_) {
          if (violation_ && violation_->empty())
            *violation_ = "field typing F(" + x->recv_class + ", " + r.str() + ", " + x->field +
                          ") lacks " + ry.str();
          continue;
        }
        entry.insert(ry);
        ++f_updates_;
      }
      return unit_at(ry);
    }
    if (auto* x = std::get_if<Call>(&n)) {
      Sig s{x->recv_class, lookup(env, x->recv, e), x->method, {}};
      for (const auto& a : x->args) s.args.push_back(lookup(env, a, e));
      if (demand_) add_signature(s);
      Typing<D> out;
      auto it = table_->m.find(s);
      if (it != table_->m.end()) {
        out.t = it->second.t;
        out.h = it->second.h;
      } else if (frozen_) {
        table_->m.try_emplace(s);
      }
      out.s.add(d_, s, d_.unit());
      return out;
    }
    if (auto* x = std::get_if<If>(&n)) {
      if (disjoint(lookup(env, x->lhs, e), lookup(env, x->rhs, e))) return typeff(env, x->else_branch);
      Typing<D> a = typeff(env, x->then_branch);
      Typing<D> b = typeff(env, x->else_branch);
      return {join(d_, a.t, b.t), join(d_, a.h, b.h), join(d_, a.s, b.s)};
    }
    if (auto* x = std::get_if<Let>(&n)) {
      Typing<D> first = typeff(env, x->bound);
      Typing<D> out;
      out.h = first.h;
      out.s = first.s;
      for (const auto& [r, u] : first.t) {
        Env inner = env;
        inner[x->var] = r;
        Typing<D> body = typeff(inner, x->body);
        out.t = join(d_, out.t, scale(d_, u, body.t));
        out.h = join(d_, out.h, scale(d_, u, body.h));
        out.s = join(d_, out.s, scale(d_, u, body.s));
      }
      return out;
    }
    if (auto* x = std::get_if<Throw>(&n)) {
      Typing<D> inner = typeff(env, x->operand);
      return {RegExpr<D>{}, join(d_, inner.t, inner.h), inner.s};
    }
    if (auto* x = std::get_if<Try>(&n)) {
      Typing<D> body = typeff(env, x->body);
      Typing<D> out{body.t, except_filter(d_, body.h, x->exc_class, p_, meta_), body.s};
      for (const auto& [r, u] : body.h) {
        const auto& cs = meta_.cls(r);
        bool handled = std::any_of(cs.begin(), cs.end(),
                                   [&](const std::string& c) { return p_.preceq(c, x->exc_class); });
        if (!handled) continue;
        Env inner = env;
        inner[x->var] = r;
        Typing<D> h = typeff(inner, x->handler);
        out.t = join(d_, out.t, scale(d_, u, h.t));
        out.h = join(d_, out.h, scale(d_, u, h.h));
        out.s = join(d_, out.s, scale(d_, u, h.s));
      }
      return out;
    }
    throw UsageError("unhandled expression");
  }

  const fj::Program& p_;
  const D& d_;
  const Intrinsics* intr_;
  RegionMeta meta_;

  ClassTableB<D>* table_ = nullptr;
  bool frozen_ = false;
  bool demand_ = false;
  std::string* violation_ = nullptr;
  size_t f_updates_ = 0;
  std::map<MemoKey, Typing<D>> memo_;
  std::map<const fj::Expr*, std::vector<std::string>> fv_;
};

template <BuchiAlgebra D>
InferResult<D> infer(const fj::Program& p, const D& d, const Intrinsics* intr = nullptr,
                     const InferOptions& opt = {}) {
  Engine<D> engine(p, d, intr);
  return engine.infer(opt);
}

template <BuchiAlgebra D>
WellTyped check_well_typed(const fj::Program& p, const ClassTableB<D>& table, const D& d,
                           const Intrinsics* intr = nullptr) {
  Engine<D> engine(p, d, intr);
  return engine.check_well_typed(table);
}

}  // namespace guidecheck
