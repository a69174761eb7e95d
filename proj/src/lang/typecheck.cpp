#include "guidecheck/lang/typecheck.hpp"

#include <map>

namespace guidecheck::fj {

namespace {

class Checker {
 public:
  explicit Checker(const Program& p) : p_(p) {}

  std::vector<TypeError> run() {
    for (const auto& c : p_.classes()) {
      for (const auto& f : c.fields)
        if (f.type == kNullType || !p_.is_class(f.type))
          error(f.pos, "field '" + f.name + "' has undeclared class '" + f.type + "'");
      for (const auto& m : c.methods) method(c, m);
    }
    return std::move(errors_);
  }

 private:
  using Env = std::map<std::string, std::string>;

  void error(const SourcePos& pos, std::string msg) { errors_.push_back({pos, std::move(msg)}); }

  bool valid_class(const std::string& c) const { return c != kNullType && p_.is_class(c); }

  void method(const ClassDecl& c, const MethodDecl& m) {
    bool ok = valid_class(m.ret);
    if (!ok) error(m.pos, "method '" + m.name + "' has undeclared return class '" + m.ret + "'");
    Env env{{"this", c.name}};
    for (const auto& prm : m.params) {
      if (!valid_class(prm.type)) {
        error(m.pos, "parameter '" + prm.name + "' has undeclared class '" + prm.type + "'");
        ok = false;
      }
      env[prm.name] = prm.type;
    }
    if (c.super != kObject && p_.is_declared(c.super)) {
      if (auto sm = p_.find_method(c.super, m.name)) {
        bool same = sm->decl->ret == m.ret && sm->decl->params.size() == m.params.size();
        for (size_t i = 0; same && i < m.params.size(); ++i) same = sm->decl->params[i].type == m.params[i].type;
        if (!same) error(m.pos, "override of '" + m.name + "' changes its signature from '" + sm->declaring + "'");
      }
    }
    if (!ok) return;
    auto t = type(env, m.body);
    if (t && !p_.preceq(*t, m.ret))
      error(m.body->pos, "body of '" + m.name + "' has class '" + *t + "', expected '" + m.ret + "'");
  }

  std::optional<std::string> var(const Env& env, const std::string& x, const SourcePos& pos) {
    auto it = env.find(x);
    if (it == env.end()) {
      error(pos, "unbound variable '" + x + "'");
      return std::nullopt;
    }
    return it->second;
  }

  /// Checks that x is annotated with a class it conforms to.
  bool receiver(const Env& env, const std::string& x, const std::string& ann, const SourcePos& pos) {
    auto t = var(env, x, pos);
    if (!t) return false;
    if (!valid_class(ann)) {
      error(pos, "receiver annotation '" + ann + "' is not a class");
      return false;
    }
    if (!p_.preceq(*t, ann)) {
      error(pos, "receiver '" + x + "' of class '" + *t + "' does not conform to '" + ann + "'");
      return false;
    }
    return true;
  }

  std::optional<std::string> type(const Env& env, const ExprPtr& e) {
    const SourcePos& pos = e->pos;
    return std::visit(
        [&](const auto& n) -> std::optional<std::string> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            return var(env, n.name, pos);
          } else if constexpr (std::is_same_v<T, Let>) {
            auto t1 = type(env, n.bound);
            if (!p_.is_class(n.type)) {
              error(pos, "undeclared class '" + n.type + "'");
              return std::nullopt;
            }
            if (t1 && !p_.preceq(*t1, n.type))
              error(pos, "'" + n.var + "' declared '" + n.type + "' but bound to '" + *t1 + "'");
            Env inner = env;
            inner[n.var] = n.type;
            return type(inner, n.body);
          } else if constexpr (std::is_same_v<T, If>) {
            auto a = var(env, n.lhs, pos);
            auto b = var(env, n.rhs, pos);
            auto t1 = type(env, n.then_branch);
            auto t2 = type(env, n.else_branch);
            if (!a || !b || !t1 || !t2) return std::nullopt;
            return p_.lub(*t1, *t2);
          } else if constexpr (std::is_same_v<T, NullLit>) {
            return kNullType;
          } else if constexpr (std::is_same_v<T, New>) {
            if (!valid_class(n.cls)) {
              error(pos, "cannot instantiate '" + n.cls + "'");
              return std::nullopt;
            }
            return n.cls;
          } else if constexpr (std::is_same_v<T, Cast>) {
            auto t = type(env, n.operand);
            if (!valid_class(n.cls)) {
              error(pos, "cannot cast to '" + n.cls + "'");
              return std::nullopt;
            }
            if (!t) return std::nullopt;
            return n.cls;
          } else if constexpr (std::is_same_v<T, Emit>) {
            if (!p_.alphabet().find(n.event)) error(pos, "event '" + n.event + "' is not in the alphabet");
            return kNullType;
          } else if constexpr (std::is_same_v<T, Call>) {
            if (!receiver(env, n.recv, n.recv_class, pos)) return std::nullopt;
            auto m = p_.find_method(n.recv_class, n.method);
            if (!m) {
              error(pos, "class '" + n.recv_class + "' has no method '" + n.method + "'");
              return std::nullopt;
            }
            const auto& params = m->decl->params;
            if (params.size() != n.args.size()) {
              error(pos, "method '" + n.method + "' expects " + std::to_string(params.size()) + " arguments");
              return std::nullopt;
            }
            bool ok = true;
            for (size_t i = 0; i < params.size(); ++i) {
              auto t = var(env, n.args[i], pos);
              if (!t) {
                ok = false;
              } else if (!p_.preceq(*t, params[i].type)) {
                error(pos, "argument '" + n.args[i] + "' of class '" + *t + "' does not conform to '" +
                               params[i].type + "'");
                ok = false;
              }
            }
            if (!ok) return std::nullopt;
            return m->decl->ret;
          } else if constexpr (std::is_same_v<T, GetField>) {
            if (!receiver(env, n.recv, n.recv_class, pos)) return std::nullopt;
            auto f = p_.field(n.recv_class, n.field);
            if (!f) {
              error(pos, "class '" + n.recv_class + "' has no field '" + n.field + "'");
              return std::nullopt;
            }
            return f->type;
          } else if constexpr (std::is_same_v<T, SetField>) {
            if (!receiver(env, n.recv, n.recv_class, pos)) return std::nullopt;
            auto f = p_.field(n.recv_class, n.field);
            if (!f) {
              error(pos, "class '" + n.recv_class + "' has no field '" + n.field + "'");
              return std::nullopt;
            }
            auto t = var(env, n.value, pos);
            if (!t) return std::nullopt;
            if (!p_.preceq(*t, f->type)) {
              error(pos, "'" + n.value + "' of class '" + *t + "' assigned to field of class '" + f->type + "'");
              return std::nullopt;
            }
            return t;
          } else if constexpr (std::is_same_v<T, Throw>) {
            if (!type(env, n.operand)) return std::nullopt;
            return kNullType;
          } else {
            static_assert(std::is_same_v<T, Try>);
            auto t1 = type(env, n.body);
            if (!valid_class(n.exc_class)) {
              error(pos, "undeclared exception class '" + n.exc_class + "'");
              return std::nullopt;
            }
            Env inner = env;
            inner[n.var] = n.exc_class;
            auto t2 = type(inner, n.handler);
            if (!t1 || !t2) return std::nullopt;
            return p_.lub(*t1, *t2);
          }
        },
        e->node);
  }

  const Program& p_;
  std::vector<TypeError> errors_;
};

}  // namespace

std::vector<TypeError> fj_typecheck(const Program& p) { return Checker(p).run(); }

}  // namespace guidecheck::fj
