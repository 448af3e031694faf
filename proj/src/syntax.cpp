#include "xcom/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

#include "json.hpp"

namespace xcom {

std::string_view op_symbol(BinOp op) {
  switch (op) {
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Greater: return ">";
    case BinOp::Less: return "<";
    case BinOp::Eq: return "=";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mod: return "mod";
  }
  return "?";
}

std::optional<BinOp> op_from_symbol(std::string_view symbol) {
  for (auto op : {BinOp::And, BinOp::Or, BinOp::Greater, BinOp::Less, BinOp::Eq, BinOp::Add,
                  BinOp::Sub, BinOp::Mod}) {
    if (op_symbol(op) == symbol) return op;
  }
  return std::nullopt;
}

int op_level(BinOp op) {
  switch (op) {
    case BinOp::And:
    case BinOp::Or: return 1;
    case BinOp::Greater:
    case BinOp::Less:
    case BinOp::Eq: return 2;
    case BinOp::Add:
    case BinOp::Sub: return 3;
    case BinOp::Mod: return 4;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Structural equality

bool same_exp(const ExpPtr& a, const ExpPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool same_stmt(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

struct ExpEq {
  bool operator()(const Const& a, const Const& b) const { return a.value == b.value; }
  bool operator()(const Var& a, const Var& b) const { return a.name == b.name; }
  bool operator()(const BinExp& a, const BinExp& b) const {
    return a.op == b.op && same_exp(a.left, b.left) && same_exp(a.right, b.right);
  }
  bool operator()(const New& a, const New& b) const { return a.type_name == b.type_name; }
  bool operator()(const FieldRef& a, const FieldRef& b) const {
    return a.field == b.field && same_exp(a.target, b.target);
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

struct StmtEq {
  bool operator()(const Block& a, const Block& b) const {
    return std::equal(a.statements.begin(), a.statements.end(), b.statements.begin(),
                      b.statements.end(), same_stmt);
  }
  bool operator()(const TypeDeclaration& a, const TypeDeclaration& b) const {
    return a.name == b.name && a.field_names == b.field_names;
  }
  bool operator()(const ValueDeclaration& a, const ValueDeclaration& b) const {
    return a.name == b.name && same_exp(a.init, b.init);
  }
  bool operator()(const While& a, const While& b) const {
    return same_exp(a.test, b.test) && same_stmt(a.body, b.body);
  }
  bool operator()(const If& a, const If& b) const {
    return same_exp(a.test, b.test) && same_stmt(a.then_part, b.then_part) &&
           same_stmt(a.else_part, b.else_part);
  }
  bool operator()(const Update& a, const Update& b) const {
    return a.name == b.name && same_exp(a.value, b.value);
  }
  bool operator()(const FieldUpdate& a, const FieldUpdate& b) const {
    return a.field == b.field && same_exp(a.target, b.target) && same_exp(a.value, b.value);
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Exp& a, const Exp& b) { return std::visit(ExpEq{}, a.node, b.node); }
bool operator==(const Statement& a, const Statement& b) {
  return std::visit(StmtEq{}, a.node, b.node);
}

// ---------------------------------------------------------------------------
// Builders

namespace ast {

ExpPtr int_const(Integer n) { return std::make_shared<Exp>(Exp{Const{std::move(n)}, {}}); }
ExpPtr bool_const(bool b) { return std::make_shared<Exp>(Exp{Const{b}, {}}); }
ExpPtr var(std::string name) { return std::make_shared<Exp>(Exp{Var{std::move(name)}, {}}); }
ExpPtr bin(BinOp op, ExpPtr left, ExpPtr right) {
  return std::make_shared<Exp>(Exp{BinExp{op, std::move(left), std::move(right)}, {}});
}
ExpPtr new_record(std::string type_name) {
  return std::make_shared<Exp>(Exp{New{std::move(type_name)}, {}});
}
ExpPtr field_ref(ExpPtr target, std::string field) {
  return std::make_shared<Exp>(Exp{FieldRef{std::move(target), std::move(field)}, {}});
}

StmtPtr block(std::vector<StmtPtr> statements) {
  return std::make_shared<Statement>(Statement{Block{std::move(statements)}, {}});
}
StmtPtr type_decl(std::string name, std::vector<std::string> field_names) {
  return std::make_shared<Statement>(
      Statement{TypeDeclaration{std::move(name), std::move(field_names)}, {}});
}
StmtPtr value_decl(std::string name, ExpPtr init) {
  return std::make_shared<Statement>(
      Statement{ValueDeclaration{std::move(name), std::move(init)}, {}});
}
StmtPtr while_loop(ExpPtr test, StmtPtr body) {
  return std::make_shared<Statement>(Statement{While{std::move(test), std::move(body)}, {}});
}
StmtPtr if_stmt(ExpPtr test, StmtPtr then_part, StmtPtr else_part) {
  return std::make_shared<Statement>(
      Statement{If{std::move(test), std::move(then_part), std::move(else_part)}, {}});
}
StmtPtr update(std::string name, ExpPtr value) {
  return std::make_shared<Statement>(Statement{Update{std::move(name), std::move(value)}, {}});
}
StmtPtr field_update(ExpPtr target, std::string field, ExpPtr value) {
  return std::make_shared<Statement>(
      Statement{FieldUpdate{std::move(target), std::move(field), std::move(value)}, {}});
}

}  // namespace ast

// ---------------------------------------------------------------------------
// Lexer

namespace {

constexpr std::array<std::string_view, 16> kKeywords = {
    "begin", "end",  "type", "is",  "value", "while", "do",  "if",
    "then",  "else", "new",  "true", "false", "and",   "or",  "mod"};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

namespace {

enum class Tok { Name, Keyword, Int, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceLoc loc{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", loc});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
          advance();
        std::string word(src_.substr(start, pos_ - start));
        out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Name, word, loc});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
        out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), loc});
      } else if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        advance();
        advance();
        out.push_back({Tok::Symbol, ":=", loc});
      } else if (std::string_view("().;+-<>=").find(c) != std::string_view::npos) {
        advance();
        out.push_back({Tok::Symbol, std::string(1, c), loc});
      } else {
        throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", loc);
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  ExpPtr whole_exp() {
    auto e = exp();
    expect_end();
    return e;
  }

  StmtPtr whole_statement() {
    auto s = statement();
    expect_end();
    return s;
  }

  StmtPtr program() {
    std::vector<StmtPtr> stmts;
    SourceLoc loc = peek().loc;
    for (;;) {
      skip_semicolons();
      if (peek().kind == Tok::End) break;
      stmts.push_back(statement());
    }
    if (stmts.empty()) fail(peek(), "empty program");
    if (stmts.size() == 1) return stmts.front();
    return std::make_shared<Statement>(Statement{Block{std::move(stmts)}, loc});
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool at(std::string_view text) const {
    const Token& t = peek();
    return (t.kind == Tok::Keyword || t.kind == Tok::Symbol) && t.text == text;
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::Syntax, what + ", found " + found, t.loc);
  }

  void expect(std::string_view text) {
    if (!accept(text)) fail(peek(), "expected '" + std::string(text) + "'");
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "expected end of input");
  }

  std::string name() {
    if (peek().kind != Tok::Name) fail(peek(), "expected a name");
    return take().text;
  }

  void skip_semicolons() {
    while (accept(";")) {
    }
  }

  // Each precedence level is `operand [op level]`, so equal-level chains
  // associate to the right.
  ExpPtr exp() { return level(1); }

  ExpPtr level(int lvl) {
    if (lvl > 4) return postfix();
    SourceLoc loc = peek().loc;
    ExpPtr left = level(lvl + 1);
    const Token& t = peek();
    if (t.kind == Tok::Keyword || t.kind == Tok::Symbol) {
      if (auto op = op_from_symbol(t.text); op && op_level(*op) == lvl) {
        take();
        ExpPtr right = level(lvl);
        return std::make_shared<Exp>(Exp{BinExp{*op, std::move(left), std::move(right)}, loc});
      }
    }
    return left;
  }

  ExpPtr postfix() {
    ExpPtr e = atom();
    while (at(".")) {
      SourceLoc loc = peek().loc;
      take();
      std::string field = name();
      e = std::make_shared<Exp>(Exp{FieldRef{std::move(e), std::move(field)}, loc});
    }
    return e;
  }

  ExpPtr atom() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    switch (t.kind) {
      case Tok::Int: {
        Integer n(take().text);
        return std::make_shared<Exp>(Exp{Const{std::move(n)}, loc});
      }
      case Tok::Name: return std::make_shared<Exp>(Exp{Var{take().text}, loc});
      case Tok::Keyword:
        if (accept("true")) return std::make_shared<Exp>(Exp{Const{true}, loc});
        if (accept("false")) return std::make_shared<Exp>(Exp{Const{false}, loc});
        if (accept("new")) return std::make_shared<Exp>(Exp{New{name()}, loc});
        break;
      case Tok::Symbol:
        if (accept("(")) {
          ExpPtr e = exp();
          expect(")");
          return e;
        }
        break;
      case Tok::End: break;
    }
    fail(t, "expected an expression");
  }

  StmtPtr statement() {
    SourceLoc loc = peek().loc;
    auto make = [&](auto node) { return std::make_shared<Statement>(Statement{std::move(node), loc}); };

    if (accept("begin")) {
      std::vector<StmtPtr> stmts;
      for (;;) {
        skip_semicolons();
        if (accept("end")) break;
        if (peek().kind == Tok::End) fail(peek(), "expected 'end' to close block");
        stmts.push_back(statement());
      }
      return make(Block{std::move(stmts)});
    }
    if (accept("type")) {
      std::string n = name();
      expect("is");
      std::vector<std::string> fields;
      std::set<std::string> seen;
      while (peek().kind == Tok::Name) {
        const Token& ft = peek();
        if (!seen.insert(ft.text).second)
          throw Error(ErrorKind::Syntax, "duplicate field name '" + ft.text + "' in type " + n,
                      ft.loc);
        fields.push_back(take().text);
      }
      expect("end");
      return make(TypeDeclaration{std::move(n), std::move(fields)});
    }
    if (accept("value")) {
      std::string n = name();
      expect("is");
      ExpPtr init = exp();
      expect("end");
      return make(ValueDeclaration{std::move(n), std::move(init)});
    }
    if (accept("while")) {
      ExpPtr test = exp();
      expect("do");
      StmtPtr body = statement();
      expect("end");
      return make(While{std::move(test), std::move(body)});
    }
    if (accept("if")) {
      ExpPtr test = exp();
      expect("then");
      StmtPtr then_part = statement();
      StmtPtr else_part;
      if (accept("else")) else_part = statement();
      expect("end");
      return make(If{std::move(test), std::move(then_part), std::move(else_part)});
    }

    const Token& start = peek();
    ExpPtr target = exp();
    expect(":=");
    ExpPtr value = exp();
    expect(";");
    if (auto* v = std::get_if<Var>(&target->node)) return make(Update{v->name, std::move(value)});
    if (auto* f = std::get_if<FieldRef>(&target->node))
      return make(FieldUpdate{f->target, f->field, std::move(value)});
    throw Error(ErrorKind::Syntax, "left of ':=' must be a name or a field reference", start.loc);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ExpPtr parse_exp(std::string_view text) { return Parser(text).whole_exp(); }
StmtPtr parse_statement(std::string_view text) { return Parser(text).whole_statement(); }
StmtPtr parse_program(std::string_view text) { return Parser(text).program(); }

// ---------------------------------------------------------------------------
// Dumps

namespace {

std::string literal_text(const Literal& lit) {
  if (auto* b = std::get_if<bool>(&lit)) return *b ? "true" : "false";
  return to_string(std::get<Integer>(lit));
}

void dump_exp_into(std::ostringstream& out, const Exp& e, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          out << pad << "Const " << literal_text(n.value) << '\n';
        } else if constexpr (std::is_same_v<T, Var>) {
          out << pad << "Var " << n.name << '\n';
        } else if constexpr (std::is_same_v<T, BinExp>) {
          out << pad << "BinExp " << op_symbol(n.op) << '\n';
          dump_exp_into(out, *n.left, depth + 1);
          dump_exp_into(out, *n.right, depth + 1);
        } else if constexpr (std::is_same_v<T, New>) {
          out << pad << "New " << n.type_name << '\n';
        } else {
          out << pad << "FieldRef " << n.field << '\n';
          dump_exp_into(out, *n.target, depth + 1);
        }
      },
      e.node);
}

void dump_stmt_into(std::ostringstream& out, const Statement& s, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          out << pad << "Block\n";
          for (const auto& c : n.statements) dump_stmt_into(out, *c, depth + 1);
        } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
          out << pad << "TypeDeclaration " << n.name << " [";
          for (std::size_t i = 0; i < n.field_names.size(); ++i)
            out << (i ? " " : "") << n.field_names[i];
          out << "]\n";
        } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
          out << pad << "ValueDeclaration " << n.name << '\n';
          dump_exp_into(out, *n.init, depth + 1);
        } else if constexpr (std::is_same_v<T, While>) {
          out << pad << "While\n";
          dump_exp_into(out, *n.test, depth + 1);
          dump_stmt_into(out, *n.body, depth + 1);
        } else if constexpr (std::is_same_v<T, If>) {
          out << pad << (n.else_part ? "If\n" : "If (no else)\n");
          dump_exp_into(out, *n.test, depth + 1);
          dump_stmt_into(out, *n.then_part, depth + 1);
          if (n.else_part) dump_stmt_into(out, *n.else_part, depth + 1);
        } else if constexpr (std::is_same_v<T, Update>) {
          out << pad << "Update " << n.name << '\n';
          dump_exp_into(out, *n.value, depth + 1);
        } else {
          out << pad << "FieldUpdate " << n.field << '\n';
          dump_exp_into(out, *n.target, depth + 1);
          dump_exp_into(out, *n.value, depth + 1);
        }
      },
      s.node);
}

using nlohmann::json;

json exp_json(const Exp& e) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          if (auto* b = std::get_if<bool>(&n.value)) return {{"kind", "Const"}, {"value", *b}};
          const Integer& i = std::get<Integer>(n.value);
          // Integers that fit travel as JSON numbers, others as decimal strings.
          if (i <= Integer(INT64_MAX) && i >= Integer(INT64_MIN))
            return {{"kind", "Const"}, {"value", i.convert_to<std::int64_t>()}};
          return {{"kind", "Const"}, {"value", to_string(i)}};
        } else if constexpr (std::is_same_v<T, Var>) {
          return {{"kind", "Var"}, {"name", n.name}};
        } else if constexpr (std::is_same_v<T, BinExp>) {
          return {{"kind", "BinExp"},
                  {"op", std::string(op_symbol(n.op))},
                  {"left", exp_json(*n.left)},
                  {"right", exp_json(*n.right)}};
        } else if constexpr (std::is_same_v<T, New>) {
          return {{"kind", "New"}, {"type", n.type_name}};
        } else {
          return {{"kind", "FieldRef"}, {"target", exp_json(*n.target)}, {"field", n.field}};
        }
      },
      e.node);
}

json stmt_json(const Statement& s) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          json arr = json::array();
          for (const auto& c : n.statements) arr.push_back(stmt_json(*c));
          return {{"kind", "Block"}, {"statements", arr}};
        } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
          return {{"kind", "TypeDeclaration"}, {"name", n.name}, {"fieldNames", n.field_names}};
        } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
          return {{"kind", "ValueDeclaration"}, {"name", n.name}, {"init", exp_json(*n.init)}};
        } else if constexpr (std::is_same_v<T, While>) {
          return {{"kind", "While"}, {"test", exp_json(*n.test)}, {"body", stmt_json(*n.body)}};
        } else if constexpr (std::is_same_v<T, If>) {
          json j = {{"kind", "If"},
                    {"test", exp_json(*n.test)},
                    {"thenPart", stmt_json(*n.then_part)},
                    {"elsePart", nullptr}};
          if (n.else_part) j["elsePart"] = stmt_json(*n.else_part);
          return j;
        } else if constexpr (std::is_same_v<T, Update>) {
          return {{"kind", "Update"}, {"name", n.name}, {"value", exp_json(*n.value)}};
        } else {
          return {{"kind", "FieldUpdate"},
                  {"target", exp_json(*n.target)},
                  {"field", n.field},
                  {"value", exp_json(*n.value)}};
        }
      },
      s.node);
}

}  // namespace

std::string dump_ast(const Statement& s) {
  std::ostringstream out;
  dump_stmt_into(out, s, 0);
  return out.str();
}

std::string dump_exp(const Exp& e) {
  std::ostringstream out;
  dump_exp_into(out, e, 0);
  return out.str();
}

std::string ast_json(const Statement& s, int indent) { return stmt_json(s).dump(indent); }

}  // namespace xcom
