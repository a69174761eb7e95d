#include "guidecheck/interp/interp.hpp"

#include <deque>
#include <unordered_map>

#include "guidecheck/error.hpp"

namespace guidecheck::interp {

std::string to_string(StuckReason r) {
  switch (r) {
    case StuckReason::CastFailed: return "cast failed";
    case StuckReason::NullDeref: return "null dereference";
    case StuckReason::ThrowNull: return "throw of null";
    case StuckReason::Unbound: return "unbound variable";
    case StuckReason::NoIntrinsicOption: return "no intrinsic option applies";
  }
  return "";
}

std::string Outcome::kind_name() const {
  switch (kind) {
    case Terminated: return "terminated";
    case Thrown: return "thrown";
    case OutOfFuel: return "out-of-fuel";
    case Stuck: return "stuck";
  }
  return "";
}

Interpreter::Interpreter(const fj::Program& p, const Intrinsics* intrinsics, int word_bound)
    : p_(p), intrinsics_(intrinsics), word_bound_(word_bound), meta_(p) {}

namespace {

struct Abort {
  Outcome::Kind kind;
  StuckReason reason = StuckReason::Unbound;
  SourcePos pos;
  std::string detail;
  int pending = 0;
};

struct Res {
  bool thrown = false;
  Value v = kNull;
};

using Env = std::vector<std::pair<std::string, Value>>;

}  // namespace

class Run {
 public:
  Run(const Interpreter& in, Heap h, int fuel, const ChoiceScript& script)
      : in_(in), p_(in.p_), heap_(std::move(h)), fuel_(fuel), script_(script) {}

  Outcome go(const Store& s, const fj::ExprPtr& e) {
    Env env(s.begin(), s.end());
    Outcome out;
    try {
      Res r = eval(env, e);
      out.kind = r.thrown ? Outcome::Thrown : Outcome::Terminated;
      out.value = r.v;
    } catch (const Abort& a) {
      out.kind = a.kind;
      out.reason = a.reason;
      out.pos = a.pos;
      out.detail = a.detail;
      out.script_exhausted = a.pending > 0;
      out.pending_options = a.pending;
    }
    out.heap = std::move(heap_);
    out.trace = std::move(trace_);
    out.script = std::move(consumed_);
    out.lasso = std::move(lasso_);
    return out;
  }

 private:
  [[noreturn]] void stuck(StuckReason r, const SourcePos& pos, std::string detail) {
    throw Abort{Outcome::Stuck, r, pos, std::move(detail), 0};
  }

  Value lookup(const Env& env, const std::string& x, const SourcePos& pos) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return it->second;
    stuck(StuckReason::Unbound, pos, x);
  }

  const std::string& class_of(Value v) const { return v == kNull ? fj::kNullType : heap_.at(v).cls; }

  Object& deref(Value v, const SourcePos& pos, const std::string& what) {
    if (v == kNull) stuck(StuckReason::NullDeref, pos, what);
    return heap_.at(static_cast<size_t>(v));
  }

  Value alloc(const std::string& cls, const std::string& label) {
    Object o{cls, {}, label};
    if (p_.is_declared(cls))
      for (const auto& f : p_.fields_of(cls)) o.fields[f.name] = kNull;
    heap_.push_back(std::move(o));
    return static_cast<Value>(heap_.size() - 1);
  }

  Res eval(Env& env, const fj::ExprPtr& e) {
    using namespace fj;
    const SourcePos& pos = e->pos;
    if (auto* n = std::get_if<Var>(&e->node)) return {false, lookup(env, n->name, pos)};
    if (auto* n = std::get_if<Let>(&e->node)) {
      Res r = eval(env, n->bound);
      if (r.thrown) return r;
      env.emplace_back(n->var, r.v);
      Res out = eval(env, n->body);
      env.pop_back();
      return out;
    }
    if (auto* n = std::get_if<If>(&e->node)) {
      bool same = lookup(env, n->lhs, pos) == lookup(env, n->rhs, pos);
      return eval(env, same ? n->then_branch : n->else_branch);
    }
    if (std::holds_alternative<NullLit>(e->node)) return {};
    if (auto* n = std::get_if<New>(&e->node)) return {false, alloc(n->cls, n->label)};
    if (auto* n = std::get_if<Cast>(&e->node)) {
      Res r = eval(env, n->operand);
      if (r.thrown) return r;
      if (!p_.preceq(class_of(r.v), n->cls))
        stuck(StuckReason::CastFailed, pos, class_of(r.v) + " is not a " + n->cls);
      return r;
    }
    if (auto* n = std::get_if<Emit>(&e->node)) {
      auto a = p_.alphabet().find(n->event);
      if (!a) throw UsageError("event '" + n->event + "' outside the program alphabet");
      trace_.push_back(*a);
      return {};
    }
    if (auto* n = std::get_if<GetField>(&e->node)) {
      Object& o = deref(lookup(env, n->recv, pos), pos, n->recv + "." + n->field);
      return {false, o.fields.at(n->field)};
    }
    if (auto* n = std::get_if<SetField>(&e->node)) {
      Value y = lookup(env, n->value, pos);
      Object& o = deref(lookup(env, n->recv, pos), pos, n->recv + "." + n->field);
      o.fields.at(n->field) = y;
      return {false, y};
    }
    if (auto* n = std::get_if<Throw>(&e->node)) {
      Res r = eval(env, n->operand);
      if (r.thrown) return r;
      if (r.v == kNull) stuck(StuckReason::ThrowNull, pos, "");
      return {true, r.v};
    }
    if (auto* n = std::get_if<Try>(&e->node)) {
      Res r = eval(env, n->body);
      if (!r.thrown || !p_.preceq(class_of(r.v), n->exc_class)) return r;
      env.emplace_back(n->var, r.v);
      Res out = eval(env, n->handler);
      env.pop_back();
      return out;
    }
    const auto& c = std::get<Call>(e->node);
    Value recv = lookup(env, c.recv, pos);
    std::vector<Value> args;
    for (const auto& a : c.args) args.push_back(lookup(env, a, pos));
    const std::string cls = deref(recv, pos, c.recv + "." + c.method + "()").cls;
    return call(recv, cls, c.method, args, pos);
  }

  Res call(Value recv, const std::string& cls, const std::string& m, const std::vector<Value>& args,
           const SourcePos& pos) {
    if (fuel_ <= 0) throw Abort{Outcome::OutOfFuel, {}, {}, {}, 0};
    --fuel_;
    if (in_.intrinsics_ && in_.intrinsics_->dispatches_to(p_, cls, m)) return intrinsic(cls, m, args, pos);
    fj::MethodRef ref = p_.method_lookup(cls, m);
    Env env{{"this", recv}};
    for (size_t i = 0; i < args.size(); ++i) env.emplace_back(ref.decl->params[i].name, args[i]);

    std::string key = config_key(m, recv, args);
    auto [it, fresh] = active_.emplace(key, Frame{trace_.size(), consumed_.size()});
    if (!fresh && !lasso_) {
      const Frame& f = it->second;
      lasso_ = Lasso{Word(trace_.begin(), trace_.begin() + static_cast<long>(f.trace_pos)),
                     Word(trace_.begin() + static_cast<long>(f.trace_pos), trace_.end()),
                     ChoiceScript(consumed_.begin(), consumed_.begin() + static_cast<long>(f.script_pos)),
                     ChoiceScript(consumed_.begin() + static_cast<long>(f.script_pos), consumed_.end())};
    }
    Res r;
    try {
      r = eval(env, ref.decl->body);
    } catch (...) {
      if (fresh) active_.erase(key);
      throw;
    }
    if (fresh) active_.erase(key);
    return r;
  }

  // Canonical form of the heap reachable from the call's receiver and
  // arguments, up to renaming of locations.
  std::string config_key(const std::string& m, Value recv, const std::vector<Value>& args) const {
    std::unordered_map<Value, int> index;
    std::deque<Value> queue;
    auto id = [&](Value v) -> std::string {
      if (v == kNull) return "n";
      auto [it, fresh] = index.emplace(v, static_cast<int>(index.size()));
      if (fresh) queue.push_back(v);
      return std::to_string(it->second);
    };
    std::string key = m + "(" + id(recv);
    for (Value a : args) key += "," + id(a);
    key += ")";
    while (!queue.empty()) {
      Value v = queue.front();
      queue.pop_front();
      const Object& o = heap_.at(static_cast<size_t>(v));
      key += "|" + o.cls + "@" + o.label;
      for (const auto& [f, fv] : o.fields) key += " " + f + "=" + id(fv);
    }
    return key;
  }

  Res intrinsic(const std::string& cls, const std::string& m, const std::vector<Value>& args,
                const SourcePos& pos) {
    fj::MethodRef ref = p_.method_lookup(cls, m);
    struct Option {
      const IntrinsicRule* rule;
      bool thrown;
      Word word;
    };
    std::vector<Option> options;
    auto rules = in_.intrinsics_->rules_for(ref.declaring, m);
    for (const IntrinsicRule* r : rules) {
      bool ok = r->args.size() == args.size();
      for (size_t i = 0; ok && i < args.size(); ++i) ok = satisfies(args[i], heap_, r->args[i], in_.meta_);
      if (!ok) continue;
      for (auto& w : r->emits.words_up_to(in_.word_bound_)) options.push_back({r, false, w});
    }
    for (const IntrinsicRule* r : rules) {
      if (!r->throw_region) continue;
      bool ok = r->args.size() == args.size();
      for (size_t i = 0; ok && i < args.size(); ++i) ok = satisfies(args[i], heap_, r->args[i], in_.meta_);
      if (!ok) continue;
      for (auto& w : r->throws.words_up_to(in_.word_bound_)) options.push_back({r, true, w});
    }
    if (options.empty()) stuck(StuckReason::NoIntrinsicOption, pos, ref.declaring + "." + m);
    size_t pick = 0;
    if (options.size() > 1) {
      if (spos_ >= script_.size())
        throw Abort{Outcome::OutOfFuel, StuckReason::Unbound, pos, "", static_cast<int>(options.size())};
      int c = script_[spos_++];
      if (c < 0 || static_cast<size_t>(c) >= options.size())
        throw UsageError("choice " + std::to_string(c) + " out of range at " + pos.str());
      pick = static_cast<size_t>(c);
      consumed_.push_back(c);
    }
    const Option& o = options[pick];
    trace_.insert(trace_.end(), o.word.begin(), o.word.end());
    const Region& reg = o.thrown ? *o.rule->throw_region : o.rule->ret;
    Value v = kNull;
    if (reg.kind == Region::CreatedAt) {
      v = alloc(p_.labels().at(reg.label), reg.label);
    } else if (reg.kind == Region::Unknown) {
      v = alloc(o.thrown ? fj::kObject : ref.decl->ret, kIntrinsicLabel);
    }
    return {o.thrown, v};
  }

  struct Frame {
    size_t trace_pos;
    size_t script_pos;
  };

  const Interpreter& in_;
  const fj::Program& p_;
  Heap heap_;
  Word trace_;
  int fuel_;
  const ChoiceScript& script_;
  size_t spos_ = 0;
  ChoiceScript consumed_;
  std::unordered_map<std::string, Frame> active_;
  std::optional<Lasso> lasso_;
};

Outcome Interpreter::eval(const Store& s, const Heap& h, const fj::ExprPtr& e, int fuel,
                          const ChoiceScript& script) const {
  return Run(*this, h, fuel, script).go(s, e);
}

Interpreter::EntrySetup Interpreter::entry_setup(const std::string& cls, const std::string& method) const {
  if (!p_.is_declared(cls)) throw InputError("unknown entry class '" + cls + "'");
  auto ref = p_.find_method(cls, method);
  if (!ref) throw InputError("unknown entry method '" + cls + "." + method + "'");
  EntrySetup out;
  auto fresh = [&](const std::string& c) {
    Object o{c, {}, kEntryLabel};
    if (p_.is_declared(c))
      for (const auto& f : p_.fields_of(c)) o.fields[f.name] = kNull;
    out.heap.push_back(std::move(o));
    return static_cast<Value>(out.heap.size() - 1);
  };
  out.store["$recv"] = fresh(cls);
  std::vector<std::string> args;
  for (size_t i = 0; i < ref->decl->params.size(); ++i) {
    std::string name = "$arg" + std::to_string(i);
    out.store[name] = fresh(ref->decl->params[i].type);
    args.push_back(name);
  }
  out.call = fj::make(fj::Call{"$recv", cls, method, args}, ref->decl->pos);
  return out;
}

Outcome Interpreter::run_entry(const std::string& cls, const std::string& method, int fuel,
                               const ChoiceScript& script) const {
  EntrySetup s = entry_setup(cls, method);
  return eval(s.store, s.heap, s.call, fuel, script);
}

std::vector<Explored> enumerate_traces(const Interpreter& in, const Store& s, const Heap& h,
                                       const fj::ExprPtr& e, int fuel) {
  std::vector<Explored> out;
  std::vector<ChoiceScript> stack{{}};
  while (!stack.empty()) {
    ChoiceScript script = std::move(stack.back());
    stack.pop_back();
    Outcome o = in.eval(s, h, e, fuel, script);
    if (o.script_exhausted && static_cast<int>(script.size()) < fuel) {
      for (int i = o.pending_options - 1; i >= 0; --i) {
        ChoiceScript next = script;
        next.push_back(i);
        stack.push_back(std::move(next));
      }
      continue;
    }
    out.push_back({std::move(script), std::move(o)});
  }
  return out;
}

std::vector<Explored> enumerate_traces(const Interpreter& in, const std::string& cls,
                                       const std::string& method, int fuel) {
  auto s = in.entry_setup(cls, method);
  return enumerate_traces(in, s.store, s.heap, s.call, fuel);
}

bool satisfies(Value v, const Heap& h, const Region& r, const RegionMeta& meta) {
  if (v != kNull && (v < 0 || static_cast<size_t>(v) >= h.size()))
    throw UsageError("dangling location " + std::to_string(v));
  switch (r.kind) {
    case Region::Unknown: return true;
    case Region::Null: return v == kNull;
    case Region::CreatedAt: {
      if (v == kNull) return false;
      const Object& o = h[static_cast<size_t>(v)];
      return o.label == r.label && meta.in_cls(o.cls, r);
    }
  }
  return false;
}

bool satisfies(const Store& s, const Heap& h, const std::map<std::string, Region>& gamma,
               const RegionMeta& meta) {
  for (const auto& [x, r] : gamma) {
    auto it = s.find(x);
    if (it == s.end() || !satisfies(it->second, h, r, meta)) return false;
  }
  return true;
}

bool satisfies(const Heap& h, const FieldTyping& f, const RegionMeta& meta) {
  for (const auto& o : h) {
    for (const auto& [field, v] : o.fields) {
      for (const Region& r : meta.regions()) {
        if (!satisfies(static_cast<Value>(&o - h.data()), h, r, meta)) continue;
        // A missing entry allows no value.
        auto it = f.find(FieldKey{o.cls, r, field});
        bool ok = false;
        if (it != f.end())
          for (const Region& fr : it->second) ok = ok || satisfies(v, h, fr, meta);
        if (!ok) return false;
      }
    }
  }
  return true;
}

}  // namespace guidecheck::interp
