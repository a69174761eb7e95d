#include "guidecheck/lang/parser.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace guidecheck::fj {

namespace {

struct Token {
  enum Kind { Ident, Sym, Label, End } kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(const std::string& text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      SourcePos pos{file_, line_, col_};
      if (i_ >= text_.size()) {
        out.push_back({Token::End, "", pos});
        return out;
      }
      char c = text_[i_];
      if (ident_start(c)) {
        size_t j = i_;
        while (j < text_.size() && ident_char(text_[j])) ++j;
        out.push_back({Token::Ident, text_.substr(i_, j - i_), pos});
        advance(j - i_);
      } else if (c == '=' && i_ + 1 < text_.size() && text_[i_ + 1] == '=') {
        out.push_back({Token::Sym, "==", pos});
        advance(2);
      } else if (std::string("{}();,.=[]").find(c) != std::string::npos) {
        out.push_back({Token::Sym, std::string(1, c), pos});
        advance(1);
        // Labels are raw text inside brackets after `new`.
        if (c == '[' && out.size() >= 2 && out[out.size() - 2].kind == Token::Ident &&
            out[out.size() - 2].text == "new") {
          SourcePos lpos{file_, line_, col_};
          size_t j = i_;
          while (j < text_.size() && text_[j] != ']' && text_[j] != '\n') ++j;
          if (j >= text_.size() || text_[j] != ']') throw ParseError(lpos, "unterminated label");
          std::string label = trim(text_.substr(i_, j - i_));
          if (label.empty()) throw ParseError(lpos, "empty label");
          out.push_back({Token::Label, label, lpos});
          advance(j - i_);
        }
      } else {
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  }
  static bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
  static std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }

  void advance(size_t n) {
    for (size_t k = 0; k < n; ++k, ++i_) {
      if (text_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
        while (i_ < text_.size() && text_[i_] != '\n') advance(1);
      } else if (c == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '*') {
        SourcePos pos{file_, line_, col_};
        advance(2);
        while (i_ + 1 < text_.size() && !(text_[i_] == '*' && text_[i_ + 1] == '/')) advance(1);
        if (i_ + 1 >= text_.size()) throw ParseError(pos, "unterminated comment");
        advance(2);
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::string file_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Surface syntax tree.
struct SStmt;
struct SExpr;
using SP = std::shared_ptr<SExpr>;
using Block = std::vector<SStmt>;

struct SExpr {
  enum Kind { Name, Null, New, Cast, Field, Assign, Call, Emit, If, Try, Throw } kind;
  SourcePos pos;
  std::string name;   // identifier, field, method, event, class of new/cast/catch
  std::string label;  // explicit label of new
  std::string var;    // catch variable
  SP base;            // receiver / operand / assigned value
  SP rhs;
  std::vector<SP> args;
  Block first, second;
};

struct SStmt {
  enum Kind { Decl, Return, Expr } kind;
  SourcePos pos;
  std::string type, name;
  SP expr;
};

struct SMethod {
  std::string ret, name;
  std::vector<Param> params;
  Block body;
  SourcePos pos;
};

struct SClass {
  std::string name, super;
  std::vector<FieldDecl> fields;
  std::vector<SMethod> methods;
  SourcePos pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<SClass> program() {
    std::vector<SClass> out;
    while (peek().kind != Token::End) out.push_back(class_decl());
    return out;
  }

 private:
  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is(const char* s, size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind != Token::End && t.kind != Token::Label && t.text == s;
  }
  bool is_ident(size_t k = 0) const { return peek(k).kind == Token::Ident && !keyword(peek(k).text); }
  static bool keyword(const std::string& s) {
    static const std::set<std::string> kws{"class", "extends", "return", "if",   "else",
                                           "try",   "catch",   "throw",  "emit", "new", "null"};
    return kws.count(s) != 0;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.pos, msg + (t.kind == Token::End ? " at end of input" : " near '" + t.text + "'"));
  }
  const Token& next() { return toks_[pos_++]; }
  void expect(const char* s) {
    if (!is(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  std::string ident(const char* what) {
    if (!is_ident()) fail(std::string("expected ") + what);
    return next().text;
  }

  SClass class_decl() {
    SClass c;
    c.pos = peek().pos;
    expect("class");
    c.name = ident("class name");
    c.super = kObject;
    if (is("extends")) {
      ++pos_;
      c.super = ident("superclass name");
    }
    expect("{");
    while (!is("}")) {
      SourcePos pos = peek().pos;
      std::string type = ident("member type");
      std::string name = ident("member name");
      if (is(";")) {
        ++pos_;
        c.fields.push_back({type, name, pos});
        continue;
      }
      SMethod m;
      m.ret = type;
      m.name = name;
      m.pos = pos;
      expect("(");
      if (!is(")")) {
        do {
          std::string pt = ident("parameter type");
          std::string pn = ident("parameter name");
          m.params.push_back({pt, pn});
        } while (is(",") && (++pos_, true));
      }
      expect(")");
      m.body = block();
      c.methods.push_back(std::move(m));
    }
    expect("}");
    return c;
  }

  Block block() {
    expect("{");
    Block out;
    while (!is("}")) out.push_back(stmt());
    expect("}");
    return out;
  }

  SStmt stmt() {
    SStmt s;
    s.pos = peek().pos;
    if (is("return")) {
      ++pos_;
      s.kind = SStmt::Return;
      s.expr = expr();
      expect(";");
      return s;
    }
    if (is_ident() && is_ident(1) && is("=", 2)) {
      s.kind = SStmt::Decl;
      s.type = next().text;
      s.name = next().text;
      ++pos_;
      s.expr = expr();
      expect(";");
      return s;
    }
    s.kind = SStmt::Expr;
    bool block_form = is("if") || is("try");
    s.expr = expr();
    if (block_form) {
      if (is(";")) ++pos_;
    } else {
      expect(";");
    }
    return s;
  }

  SP node(SExpr::Kind k, SourcePos pos) {
    auto e = std::make_shared<SExpr>();
    e->kind = k;
    e->pos = std::move(pos);
    return e;
  }

  bool starts_expr(size_t k) const {
    const Token& t = peek(k);
    if (t.kind == Token::Ident) return t.text != "else" && t.text != "catch";
    return t.kind == Token::Sym && t.text == "(";
  }

  SP expr() {
    SourcePos pos = peek().pos;
    if (is("if")) {
      ++pos_;
      auto e = node(SExpr::If, pos);
      expect("(");
      e->base = expr();
      expect("==");
      e->rhs = expr();
      expect(")");
      e->first = block();
      expect("else");
      e->second = block();
      return e;
    }
    if (is("try")) {
      ++pos_;
      auto e = node(SExpr::Try, pos);
      e->first = block();
      expect("catch");
      expect("(");
      e->name = ident("exception class");
      e->var = ident("exception variable");
      expect(")");
      e->second = block();
      return e;
    }
    if (is("throw")) {
      ++pos_;
      auto e = node(SExpr::Throw, pos);
      e->base = expr();
      return e;
    }
    if (is("emit")) {
      ++pos_;
      auto e = node(SExpr::Emit, pos);
      if (is("(")) {
        ++pos_;
        e->name = ident("event name");
        expect(")");
      } else {
        e->name = ident("event name");
      }
      return e;
    }
    if (is("(") && is_ident(1) && is(")", 2) && starts_expr(3)) {
      pos_ += 1;
      auto e = node(SExpr::Cast, pos);
      e->name = next().text;
      ++pos_;
      e->base = expr();
      return e;
    }
    return postfix();
  }

  SP postfix() {
    SP e = primary();
    while (is(".")) {
      ++pos_;
      SourcePos pos = peek().pos;
      std::string member = ident("member name");
      if (is("(")) {
        auto c = node(SExpr::Call, pos);
        c->base = e;
        c->name = member;
        c->args = args();
        e = c;
      } else if (is("=")) {
        ++pos_;
        auto a = node(SExpr::Assign, pos);
        a->base = e;
        a->name = member;
        a->rhs = expr();
        return a;
      } else {
        auto f = node(SExpr::Field, pos);
        f->base = e;
        f->name = member;
        e = f;
      }
    }
    return e;
  }

  std::vector<SP> args() {
    expect("(");
    std::vector<SP> out;
    if (!is(")")) {
      out.push_back(expr());
      while (is(",")) {
        ++pos_;
        out.push_back(expr());
      }
    }
    expect(")");
    return out;
  }

  SP primary() {
    SourcePos pos = peek().pos;
    if (is("null")) {
      ++pos_;
      return node(SExpr::Null, pos);
    }
    if (is("new")) {
      ++pos_;
      auto e = node(SExpr::New, pos);
      if (is("[")) {
        ++pos_;
        if (peek().kind != Token::Label) fail("expected label");
        e->label = next().text;
        expect("]");
      }
      e->name = ident("class name");
      expect("(");
      expect(")");
      return e;
    }
    if (is("(")) {
      ++pos_;
      SP e = expr();
      expect(")");
      return e;
    }
    if (is_ident()) {
      std::string name = next().text;
      if (is("(")) {
        // Call on the implicit receiver `this`.
        auto self = node(SExpr::Name, pos);
        self->name = "this";
        auto c = node(SExpr::Call, pos);
        c->base = self;
        c->name = name;
        c->args = args();
        return c;
      }
      auto e = node(SExpr::Name, pos);
      e->name = name;
      return e;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Desugaring into the core calculus.
class Desugarer {
 public:
  Desugarer(const Program& skeleton, Alphabet& alphabet, bool fixed_alphabet)
      : p_(skeleton), alphabet_(alphabet), fixed_(fixed_alphabet) {}

  ExprPtr method(const std::string& cls, const SMethod& m) {
    cls_ = cls;
    env_.clear();
    used_.clear();
    counter_ = 0;
    collect_names(m);
    env_.emplace_back("this", cls);
    for (auto& prm : m.params) {
      check_type(prm.type, m.pos, false);
      env_.emplace_back(prm.name, prm.type);
    }
    return block(m.body, 0, true).core;
  }

 private:
  struct Binding {
    std::string var, type;
    ExprPtr core;
    SourcePos pos;
  };
  struct Result {
    std::vector<Binding> pre;
    ExprPtr core;
    std::string type;
  };

  void collect_names(const SMethod& m) {
    for (auto& prm : m.params) used_.insert(prm.name);
    std::function<void(const Block&)> blk;
    std::function<void(const SP&)> ex = [&](const SP& e) {
      if (!e) return;
      if (e->kind == SExpr::Name) used_.insert(e->name);
      if (e->kind == SExpr::Try) used_.insert(e->var);
      ex(e->base);
      ex(e->rhs);
      for (auto& a : e->args) ex(a);
      blk(e->first);
      blk(e->second);
    };
    blk = [&](const Block& b) {
      for (auto& s : b) {
        if (s.kind == SStmt::Decl) used_.insert(s.name);
        ex(s.expr);
      }
    };
    blk(m.body);
  }

  std::string fresh() {
    std::string v;
    do v = "$" + std::to_string(++counter_);
    while (used_.count(v));
    used_.insert(v);
    return v;
  }

  void check_type(const std::string& t, const SourcePos& pos, bool allow_nulltype) {
    if (t == kNullType && !allow_nulltype) throw ParseError(pos, "NullType cannot be used here");
    if (!p_.is_class(t)) throw ParseError(pos, "undeclared class '" + t + "'");
  }

  const std::string* lookup(const std::string& v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == v) return &it->second;
    return nullptr;
  }

  static ExprPtr wrap(const std::vector<Binding>& pre, ExprPtr body) {
    for (auto it = pre.rbegin(); it != pre.rend(); ++it)
      body = make(Let{it->var, it->type, it->core, body}, it->pos);
    return body;
  }

  struct BlockResult {
    ExprPtr core;
    std::string type;
  };

  BlockResult block(const Block& b, size_t i, bool tail) {
    if (i == b.size()) return {make(NullLit{}), kNullType};
    const SStmt& s = b[i];
    const bool last = i + 1 == b.size();
    switch (s.kind) {
      case SStmt::Decl: {
        check_type(s.type, s.pos, true);
        Result r = expr(s.expr, false);
        env_.emplace_back(s.name, s.type);
        BlockResult rest = block(b, i + 1, tail);
        env_.pop_back();
        return {wrap(r.pre, make(Let{s.name, s.type, r.core, rest.core}, s.pos)), rest.type};
      }
      case SStmt::Return: {
        if (!last) throw ParseError(b[i + 1].pos, "unreachable statement after return");
        if (!tail) throw ParseError(s.pos, "return is only allowed in tail position");
        Result r = expr(s.expr, true);
        return {wrap(r.pre, r.core), r.type};
      }
      case SStmt::Expr: {
        if (last) {
          Result r = expr(s.expr, tail);
          return {wrap(r.pre, r.core), r.type};
        }
        Result r = expr(s.expr, false);
        std::string v = fresh();
        BlockResult rest = block(b, i + 1, tail);
        return {wrap(r.pre, make(Let{v, r.type, r.core, rest.core}, s.pos)), rest.type};
      }
    }
    return {};
  }

  std::string atom(const SP& e, std::vector<Binding>& pre) {
    if (e->kind == SExpr::Name && lookup(e->name)) return e->name;
    Result r = expr(e, false);
    for (auto& bnd : r.pre) pre.push_back(std::move(bnd));
    std::string v = fresh();
    pre.push_back({v, r.type, r.core, e->pos});
    env_.emplace_back(v, r.type);
    ++pushed_;
    return v;
  }

  std::string type_of_var(const std::string& v) const { return *lookup(v); }

  Result expr(const SP& e, bool tail) {
    const size_t mark = pushed_;
    Result r = expr_inner(e, tail);
    // Drop the environment entries of atomized temporaries.
    for (size_t k = mark; k < pushed_; ++k) env_.pop_back();
    pushed_ = mark;
    return r;
  }

  Result expr_inner(const SP& e, bool tail) {
    Result r;
    switch (e->kind) {
      case SExpr::Name: {
        if (const std::string* t = lookup(e->name)) {
          r.core = make(Var{e->name}, e->pos);
          r.type = *t;
          return r;
        }
        if (auto f = p_.field(cls_, e->name)) {
          r.core = make(GetField{"this", cls_, e->name}, e->pos);
          r.type = f->type;
          return r;
        }
        throw ParseError(e->pos, "unknown variable '" + e->name + "'");
      }
      case SExpr::Null:
        r.core = make(NullLit{}, e->pos);
        r.type = kNullType;
        return r;
      case SExpr::New: {
        check_type(e->name, e->pos, false);
        std::string label = e->label.empty() ? e->pos.str() : e->label;
        r.core = make(New{label, e->name}, e->pos);
        r.type = e->name;
        return r;
      }
      case SExpr::Cast: {
        check_type(e->name, e->pos, false);
        Result inner = expr(e->base, false);
        r.pre = std::move(inner.pre);
        r.core = make(Cast{e->name, inner.core}, e->pos);
        r.type = e->name;
        return r;
      }
      case SExpr::Emit: {
        if (!alphabet_.find(e->name)) {
          if (fixed_) throw ParseError(e->pos, "event '" + e->name + "' is not in the alphabet");
          alphabet_.add(e->name);
        }
        r.core = make(Emit{e->name}, e->pos);
        r.type = kNullType;
        return r;
      }
      case SExpr::Field: {
        std::string x = atom(e->base, r.pre);
        std::string c = type_of_var(x);
        auto f = c == kNullType ? std::nullopt : p_.field(c, e->name);
        if (!f) throw ParseError(e->pos, "undeclared field '" + e->name + "' in '" + c + "'");
        r.core = make(GetField{x, c, e->name}, e->pos);
        r.type = f->type;
        return r;
      }
      case SExpr::Assign: {
        std::string x = atom(e->base, r.pre);
        std::string c = type_of_var(x);
        auto f = c == kNullType ? std::nullopt : p_.field(c, e->name);
        if (!f) throw ParseError(e->pos, "undeclared field '" + e->name + "' in '" + c + "'");
        std::string y = atom(e->rhs, r.pre);
        r.core = make(SetField{x, c, e->name, y}, e->pos);
        r.type = type_of_var(y);
        return r;
      }
      case SExpr::Call: {
        std::string x = atom(e->base, r.pre);
        std::string c = type_of_var(x);
        auto m = c == kNullType ? std::nullopt : p_.find_method(c, e->name);
        if (!m) throw ParseError(e->pos, "undeclared method '" + e->name + "' in '" + c + "'");
        std::vector<std::string> args;
        for (auto& a : e->args) args.push_back(atom(a, r.pre));
        r.core = make(Call{x, c, e->name, args}, e->pos);
        r.type = m->decl->ret;
        return r;
      }
      case SExpr::If: {
        std::string x = atom(e->base, r.pre);
        std::string y = atom(e->rhs, r.pre);
        BlockResult a = block(e->first, 0, tail);
        BlockResult b = block(e->second, 0, tail);
        r.core = make(If{x, y, a.core, b.core}, e->pos);
        r.type = p_.lub(a.type, b.type);
        return r;
      }
      case SExpr::Try: {
        check_type(e->name, e->pos, false);
        BlockResult a = block(e->first, 0, tail);
        env_.emplace_back(e->var, e->name);
        BlockResult b = block(e->second, 0, tail);
        env_.pop_back();
        r.core = make(Try{a.core, e->name, e->var, b.core}, e->pos);
        r.type = p_.lub(a.type, b.type);
        return r;
      }
      case SExpr::Throw: {
        Result inner = expr(e->base, false);
        r.pre = std::move(inner.pre);
        r.core = make(Throw{inner.core}, e->pos);
        r.type = kNullType;
        return r;
      }
    }
    return r;
  }

  const Program& p_;
  Alphabet& alphabet_;
  bool fixed_;
  std::string cls_;
  std::vector<std::pair<std::string, std::string>> env_;
  std::set<std::string> used_;
  int counter_ = 0;
  size_t pushed_ = 0;
};

}  // namespace

Program parse_program(const std::vector<SourceFile>& files, const std::optional<Alphabet>& alphabet) {
  std::vector<SClass> sclasses;
  for (const auto& f : files) {
    auto cs = Parser(Lexer(f.text, f.name).run()).program();
    for (auto& c : cs) sclasses.push_back(std::move(c));
  }
  // Skeleton with placeholder bodies for name resolution.
  std::vector<ClassDecl> decls;
  for (const auto& sc : sclasses) {
    ClassDecl c{sc.name, sc.super, sc.fields, {}, sc.pos};
    for (const auto& sm : sc.methods) c.methods.push_back({sm.ret, sm.name, sm.params, make(NullLit{}), sm.pos});
    decls.push_back(std::move(c));
  }
  Alphabet sigma = alphabet.value_or(Alphabet{});
  Program skeleton(decls, sigma);
  for (auto& c : decls) {
    for (auto& f : c.fields)
      if (f.type == kNullType || !skeleton.is_class(f.type))
        throw ParseError(f.pos, "undeclared class '" + f.type + "'");
    for (auto& m : c.methods)
      if (m.ret == kNullType || !skeleton.is_class(m.ret))
        throw ParseError(m.pos, "undeclared class '" + m.ret + "'");
  }
  Desugarer ds(skeleton, sigma, alphabet.has_value());
  for (size_t i = 0; i < sclasses.size(); ++i)
    for (size_t j = 0; j < sclasses[i].methods.size(); ++j)
      decls[i].methods[j].body = ds.method(sclasses[i].name, sclasses[i].methods[j]);
  return Program(std::move(decls), std::move(sigma));
}

Program parse_program(const std::string& text, const std::string& file,
                      const std::optional<Alphabet>& alphabet) {
  return parse_program(std::vector<SourceFile>{{file, text}}, alphabet);
}

}  // namespace guidecheck::fj
