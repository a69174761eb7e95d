#include <sstream>

#include "guidecheck/lang/parser.hpp"

namespace guidecheck::fj {

namespace {

std::string pad(int indent) { return std::string(static_cast<size_t>(indent) * 2, ' '); }

std::string join_args(const std::vector<std::string>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

// `ret`: the value is returned, so the last statement of a block is a return.
void tail(std::ostream& os, const ExprPtr& e, int indent, bool ret);

void expr(std::ostream& os, const ExprPtr& e, int indent, bool ret = false) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, NullLit>) {
          os << "null";
        } else if constexpr (std::is_same_v<T, New>) {
          os << "new[" << n.label << "] " << n.cls << "()";
        } else if constexpr (std::is_same_v<T, Cast>) {
          os << "(" << n.cls << ") ";
          expr(os, n.operand, indent);
        } else if constexpr (std::is_same_v<T, Emit>) {
          os << "emit(" << n.event << ")";
        } else if constexpr (std::is_same_v<T, Call>) {
          os << n.recv << "." << n.method << "(" << join_args(n.args) << ")";
        } else if constexpr (std::is_same_v<T, GetField>) {
          os << n.recv << "." << n.field;
        } else if constexpr (std::is_same_v<T, SetField>) {
          os << n.recv << "." << n.field << " = " << n.value;
        } else if constexpr (std::is_same_v<T, Throw>) {
          os << "throw ";
          expr(os, n.operand, indent);
        } else if constexpr (std::is_same_v<T, If>) {
          os << "if (" << n.lhs << " == " << n.rhs << ") {\n";
          tail(os, n.then_branch, indent + 1, ret);
          os << pad(indent) << "} else {\n";
          tail(os, n.else_branch, indent + 1, ret);
          os << pad(indent) << "}";
        } else if constexpr (std::is_same_v<T, Try>) {
          os << "try {\n";
          tail(os, n.body, indent + 1, ret);
          os << pad(indent) << "} catch (" << n.exc_class << " " << n.var << ") {\n";
          tail(os, n.handler, indent + 1, ret);
          os << pad(indent) << "}";
        } else {
          throw UsageError("let in expression position cannot be printed");
        }
      },
      e->node);
}

void tail(std::ostream& os, const ExprPtr& e, int indent, bool ret) {
  if (auto* l = std::get_if<Let>(&e->node)) {
    os << pad(indent) << l->type << " " << l->var << " = ";
    expr(os, l->bound, indent);
    os << ";\n";
    tail(os, l->body, indent, ret);
  } else if (std::holds_alternative<If>(e->node) || std::holds_alternative<Try>(e->node)) {
    os << pad(indent);
    expr(os, e, indent, ret);
    os << "\n";
  } else {
    os << pad(indent) << (ret ? "return " : "");
    expr(os, e, indent);
    os << ";\n";
  }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  if (std::holds_alternative<Let>(e->node))
    tail(os, e, 0, true);
  else
    expr(os, e, 0);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : p.classes()) {
    if (!first) os << "\n";
    first = false;
    os << "class " << c.name;
    if (c.super != kObject) os << " extends " << c.super;
    os << " {\n";
    for (const auto& f : c.fields) os << "  " << f.type << " " << f.name << ";\n";
    for (const auto& m : c.methods) {
      os << "\n  " << m.ret << " " << m.name << "(";
      for (size_t i = 0; i < m.params.size(); ++i)
        os << (i ? ", " : "") << m.params[i].type << " " << m.params[i].name;
      os << ") {\n";
      tail(os, m.body, 2, true);
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace guidecheck::fj
