#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "guidecheck/effect/alphabet.hpp"
#include "guidecheck/error.hpp"

namespace guidecheck::fj {

inline const std::string kObject = "Object";
inline const std::string kNullType = "NullType";

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Var {
  std::string name;
};
/// let var = bound in body; `type` is the declared class of var.
struct Let {
  std::string var;
  std::string type;
  ExprPtr bound;
  ExprPtr body;
};
struct If {
  std::string lhs;
  std::string rhs;
  ExprPtr then_branch;
  ExprPtr else_branch;
};
struct NullLit {};
struct New {
  std::string label;
  std::string cls;
};
struct Cast {
  std::string cls;
  ExprPtr operand;
};
struct Emit {
  std::string event;
};
/// recv^recv_class.method(args)
struct Call {
  std::string recv;
  std::string recv_class;
  std::string method;
  std::vector<std::string> args;
};
struct GetField {
  std::string recv;
  std::string recv_class;
  std::string field;
};
struct SetField {
  std::string recv;
  std::string recv_class;
  std::string field;
  std::string value;
};
struct Throw {
  ExprPtr operand;
};
struct Try {
  ExprPtr body;
  std::string exc_class;
  std::string var;
  ExprPtr handler;
};

using Node = std::variant<Var, Let, If, NullLit, New, Cast, Emit, Call, GetField, SetField, Throw, Try>;

struct Expr {
  Node node;
  SourcePos pos;
};

template <class T>
ExprPtr make(T node, SourcePos pos = {}) {
  return std::make_shared<const Expr>(Expr{Node(std::move(node)), std::move(pos)});
}

/// Structural equality ignoring source positions.
bool same_expr(const ExprPtr& a, const ExprPtr& b);
/// Free variables of an expression.
std::set<std::string> free_vars(const ExprPtr& e);

struct FieldDecl {
  std::string type;
  std::string name;
  SourcePos pos;
};

struct Param {
  std::string type;
  std::string name;
};

struct MethodDecl {
  std::string ret;
  std::string name;
  std::vector<Param> params;
  ExprPtr body;
  SourcePos pos;
};

struct ClassDecl {
  std::string name;
  std::string super = kObject;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  SourcePos pos;
};

struct MethodRef {
  const MethodDecl* decl = nullptr;
  std::string declaring;
};

/// A whole program: the class declarations plus derived lookup structures
/// (subclassing, inherited fields and methods) and the event alphabet.
class Program {
 public:
  Program() = default;
  Program(std::vector<ClassDecl> classes, Alphabet alphabet);

  const std::vector<ClassDecl>& classes() const { return classes_; }
  const Alphabet& alphabet() const { return alphabet_; }

  bool is_class(const std::string& c) const;  // declared, Object or NullType
  bool is_declared(const std::string& c) const { return index_.count(c) != 0; }
  const ClassDecl& decl(const std::string& c) const;
  const std::string& super(const std::string& c) const;
  bool preceq(const std::string& c, const std::string& d) const;
  /// Least upper bound under ⪯.
  std::string lub(const std::string& c, const std::string& d) const;
  /// Declared classes in declaration order.
  std::vector<std::string> class_names() const;

  /// All fields of c including inherited ones, superclass fields first.
  std::vector<FieldDecl> fields_of(const std::string& c) const;
  std::optional<FieldDecl> field(const std::string& c, const std::string& f) const;
  /// Class that declares field f as seen from c.
  std::optional<std::string> field_owner(const std::string& c, const std::string& f) const;
  /// All method names visible in c (declared or inherited), sorted.
  std::vector<std::string> methods_of(const std::string& c) const;
  std::optional<MethodRef> find_method(const std::string& c, const std::string& m) const;
  MethodRef method_lookup(const std::string& c, const std::string& m) const;
  /// Labels of all `new` expressions with their class.
  const std::map<std::string, std::string>& labels() const { return labels_; }

  friend bool operator==(const Program& a, const Program& b);

 private:
  std::vector<ClassDecl> classes_;
  Alphabet alphabet_;
  std::map<std::string, size_t> index_;
  std::map<std::string, std::string> labels_;
};

}  // namespace guidecheck::fj
