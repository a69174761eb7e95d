#include "guidecheck/lang/ast.hpp"

#include <algorithm>
#include <functional>

namespace guidecheck::fj {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Var& x) { return x.name == std::get<Var>(b->node).name; },
          [&](const Let& x) {
            auto& y = std::get<Let>(b->node);
            return x.var == y.var && x.type == y.type && same_expr(x.bound, y.bound) &&
                   same_expr(x.body, y.body);
          },
          [&](const If& x) {
            auto& y = std::get<If>(b->node);
            return x.lhs == y.lhs && x.rhs == y.rhs && same_expr(x.then_branch, y.then_branch) &&
                   same_expr(x.else_branch, y.else_branch);
          },
          [&](const NullLit&) { return true; },
          [&](const New& x) {
            auto& y = std::get<New>(b->node);
            return x.label == y.label && x.cls == y.cls;
          },
          [&](const Cast& x) {
            auto& y = std::get<Cast>(b->node);
            return x.cls == y.cls && same_expr(x.operand, y.operand);
          },
          [&](const Emit& x) { return x.event == std::get<Emit>(b->node).event; },
          [&](const Call& x) {
            auto& y = std::get<Call>(b->node);
            return x.recv == y.recv && x.recv_class == y.recv_class && x.method == y.method &&
                   x.args == y.args;
          },
          [&](const GetField& x) {
            auto& y = std::get<GetField>(b->node);
            return x.recv == y.recv && x.recv_class == y.recv_class && x.field == y.field;
          },
          [&](const SetField& x) {
            auto& y = std::get<SetField>(b->node);
            return x.recv == y.recv && x.recv_class == y.recv_class && x.field == y.field &&
                   x.value == y.value;
          },
          [&](const Throw& x) { return same_expr(x.operand, std::get<Throw>(b->node).operand); },
          [&](const Try& x) {
            auto& y = std::get<Try>(b->node);
            return x.exc_class == y.exc_class && x.var == y.var && same_expr(x.body, y.body) &&
                   same_expr(x.handler, y.handler);
          },
      },
      a->node);
}

std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> out;
  std::function<void(const ExprPtr&, std::set<std::string>&)> go = [&](const ExprPtr& x,
                                                                       std::set<std::string>& bound) {
    auto use = [&](const std::string& v) {
      if (!bound.count(v)) out.insert(v);
    };
    auto under = [&](const std::string& v, const ExprPtr& body) {
      bool had = bound.count(v);
      bound.insert(v);
      go(body, bound);
      if (!had) bound.erase(v);
    };
    std::visit(overloaded{
                   [&](const Var& n) { use(n.name); },
                   [&](const Let& n) {
                     go(n.bound, bound);
                     under(n.var, n.body);
                   },
                   [&](const If& n) {
                     use(n.lhs);
                     use(n.rhs);
                     go(n.then_branch, bound);
                     go(n.else_branch, bound);
                   },
                   [&](const NullLit&) {},
                   [&](const New&) {},
                   [&](const Cast& n) { go(n.operand, bound); },
                   [&](const Emit&) {},
                   [&](const Call& n) {
                     use(n.recv);
                     for (auto& a : n.args) use(a);
                   },
                   [&](const GetField& n) { use(n.recv); },
                   [&](const SetField& n) {
                     use(n.recv);
                     use(n.value);
                   },
                   [&](const Throw& n) { go(n.operand, bound); },
                   [&](const Try& n) {
                     go(n.body, bound);
                     under(n.var, n.handler);
                   },
               },
               x->node);
  };
  std::set<std::string> bound;
  go(e, bound);
  return out;
}

Program::Program(std::vector<ClassDecl> classes, Alphabet alphabet)
    : classes_(std::move(classes)), alphabet_(std::move(alphabet)) {
  for (size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (c.name == kObject || c.name == kNullType)
      throw ParseError(c.pos, "class '" + c.name + "' cannot be declared");
    if (!index_.emplace(c.name, i).second)
      throw ParseError(c.pos, "duplicate class '" + c.name + "'");
  }
  for (const auto& c : classes_) {
    if (c.super != kObject && !index_.count(c.super))
      throw ParseError(c.pos, "undeclared superclass '" + c.super + "'");
    // Acyclicity.
    std::string cur = c.super;
    for (size_t steps = 0; cur != kObject; ++steps) {
      if (cur == c.name || steps > classes_.size())
        throw ParseError(c.pos, "cyclic inheritance involving '" + c.name + "'");
      cur = decl(cur).super;
    }
  }
  for (const auto& c : classes_) {
    std::set<std::string> seen;
    for (const auto& f : fields_of(c.name))
      if (!seen.insert(f.name).second)
        throw ParseError(f.pos, "field '" + f.name + "' redeclared in '" + c.name + "'");
    std::set<std::string> ms;
    for (const auto& m : c.methods)
      if (!ms.insert(m.name).second)
        throw ParseError(m.pos, "duplicate method '" + m.name + "' in '" + c.name + "'");
  }
  std::function<void(const ExprPtr&)> scan = [&](const ExprPtr& e) {
    std::visit(overloaded{
                   [&](const Let& n) {
                     scan(n.bound);
                     scan(n.body);
                   },
                   [&](const If& n) {
                     scan(n.then_branch);
                     scan(n.else_branch);
                   },
                   [&](const New& n) {
                     if (!labels_.emplace(n.label, n.cls).second)
                       throw ParseError(e->pos, "duplicate label '" + n.label + "'");
                   },
                   [&](const Cast& n) { scan(n.operand); },
                   [&](const Emit& n) {
                     if (!alphabet_.find(n.event))
                       throw ParseError(e->pos, "event '" + n.event + "' is not in the alphabet");
                   },
                   [&](const Throw& n) { scan(n.operand); },
                   [&](const Try& n) {
                     scan(n.body);
                     scan(n.handler);
                   },
                   [&](const auto&) {},
               },
               e->node);
  };
  for (const auto& c : classes_)
    for (const auto& m : c.methods) scan(m.body);
}

bool Program::is_class(const std::string& c) const {
  return c == kObject || c == kNullType || index_.count(c);
}

const ClassDecl& Program::decl(const std::string& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw InputError("unknown class '" + c + "'");
  return classes_[it->second];
}

const std::string& Program::super(const std::string& c) const { return decl(c).super; }

bool Program::preceq(const std::string& c, const std::string& d) const {
  if (!is_class(c)) throw InputError("unknown class '" + c + "'");
  if (!is_class(d)) throw InputError("unknown class '" + d + "'");
  if (c == d || c == kNullType || d == kObject) return true;
  if (c == kObject || d == kNullType) return false;
  for (std::string cur = c; cur != kObject; cur = super(cur))
    if (cur == d) return true;
  return false;
}

std::string Program::lub(const std::string& c, const std::string& d) const {
  if (preceq(c, d)) return d;
  if (preceq(d, c)) return c;
  for (std::string cur = super(c);; cur = super(cur))
    if (preceq(d, cur)) return cur;
}

std::vector<std::string> Program::class_names() const {
  std::vector<std::string> out;
  for (const auto& c : classes_) out.push_back(c.name);
  return out;
}

std::vector<FieldDecl> Program::fields_of(const std::string& c) const {
  if (c == kObject || c == kNullType) return {};
  std::vector<FieldDecl> out = fields_of(super(c));
  for (const auto& f : decl(c).fields) out.push_back(f);
  return out;
}

std::optional<FieldDecl> Program::field(const std::string& c, const std::string& f) const {
  for (const auto& fd : fields_of(c))
    if (fd.name == f) return fd;
  return std::nullopt;
}

std::optional<std::string> Program::field_owner(const std::string& c, const std::string& f) const {
  for (std::string cur = c; cur != kObject && cur != kNullType; cur = super(cur))
    for (const auto& fd : decl(cur).fields)
      if (fd.name == f) return cur;
  return std::nullopt;
}

std::vector<std::string> Program::methods_of(const std::string& c) const {
  std::set<std::string> names;
  for (std::string cur = c; cur != kObject && cur != kNullType; cur = super(cur))
    for (const auto& m : decl(cur).methods) names.insert(m.name);
  return {names.begin(), names.end()};
}

std::optional<MethodRef> Program::find_method(const std::string& c, const std::string& m) const {
  for (std::string cur = c; cur != kObject && cur != kNullType; cur = super(cur))
    for (const auto& md : decl(cur).methods)
      if (md.name == m) return MethodRef{&md, cur};
  return std::nullopt;
}

MethodRef Program::method_lookup(const std::string& c, const std::string& m) const {
  if (!is_class(c)) throw InputError("unknown class '" + c + "'");
  auto r = find_method(c, m);
  if (!r) throw InputError("method '" + m + "' not found in '" + c + "' or its superclasses");
  return *r;
}

bool operator==(const Program& a, const Program& b) {
  if (!(a.alphabet_ == b.alphabet_) || a.classes_.size() != b.classes_.size()) return false;
  for (size_t i = 0; i < a.classes_.size(); ++i) {
    const auto& x = a.classes_[i];
    const auto& y = b.classes_[i];
    if (x.name != y.name || x.super != y.super || x.fields.size() != y.fields.size() ||
        x.methods.size() != y.methods.size())
      return false;
    for (size_t j = 0; j < x.fields.size(); ++j)
      if (x.fields[j].name != y.fields[j].name || x.fields[j].type != y.fields[j].type) return false;
    for (size_t j = 0; j < x.methods.size(); ++j) {
      const auto& m = x.methods[j];
      const auto& n = y.methods[j];
      if (m.name != n.name || m.ret != n.ret || m.params.size() != n.params.size()) return false;
      for (size_t k = 0; k < m.params.size(); ++k)
        if (m.params[k].name != n.params[k].name || m.params[k].type != n.params[k].type) return false;
      if (!same_expr(m.body, n.body)) return false;
    }
  }
  return true;
}

}  // namespace guidecheck::fj
