#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xcom/error.hpp"
#include "xcom/integer.hpp"

namespace xcom {

// Abstract syntax for XCom. Nodes are immutable and shared; equality is
// structural and ignores source locations.

enum class BinOp { And, Or, Greater, Less, Eq, Add, Sub, Mod };

std::string_view op_symbol(BinOp op);
std::optional<BinOp> op_from_symbol(std::string_view symbol);

// Binding strength, weakest first: and/or < relational < additive < mod.
int op_level(BinOp op);

struct Exp;
using ExpPtr = std::shared_ptr<const Exp>;

using Literal = std::variant<bool, Integer>;

struct Const {
  Literal value;
};
struct Var {
  std::string name;
};
struct BinExp {
  BinOp op;
  ExpPtr left;
  ExpPtr right;
};
struct New {
  std::string type_name;
};
struct FieldRef {
  ExpPtr target;
  std::string field;
};

struct Exp {
  std::variant<Const, Var, BinExp, New, FieldRef> node;
  SourceLoc loc;
};

struct Statement;
using StmtPtr = std::shared_ptr<const Statement>;

struct Block {
  std::vector<StmtPtr> statements;
};
struct TypeDeclaration {
  std::string name;
  std::vector<std::string> field_names;
};
struct ValueDeclaration {
  std::string name;
  ExpPtr init;
};
struct While {
  ExpPtr test;
  StmtPtr body;
};
struct If {
  ExpPtr test;
  StmtPtr then_part;
  StmtPtr else_part;  // null when the source has no else branch
};
struct Update {
  std::string name;
  ExpPtr value;
};
struct FieldUpdate {
  ExpPtr target;
  std::string field;
  ExpPtr value;
};

struct Statement {
  std::variant<Block, TypeDeclaration, ValueDeclaration, While, If, Update, FieldUpdate> node;
  SourceLoc loc;
};

bool operator==(const Exp& a, const Exp& b);
bool operator==(const Statement& a, const Statement& b);
bool same_exp(const ExpPtr& a, const ExpPtr& b);
bool same_stmt(const StmtPtr& a, const StmtPtr& b);

// Builders used by tests, the generator and the translators.
namespace ast {
ExpPtr int_const(Integer n);
ExpPtr bool_const(bool b);
ExpPtr var(std::string name);
ExpPtr bin(BinOp op, ExpPtr left, ExpPtr right);
ExpPtr new_record(std::string type_name);
ExpPtr field_ref(ExpPtr target, std::string field);

StmtPtr block(std::vector<StmtPtr> statements);
StmtPtr type_decl(std::string name, std::vector<std::string> field_names);
StmtPtr value_decl(std::string name, ExpPtr init);
StmtPtr while_loop(ExpPtr test, StmtPtr body);
StmtPtr if_stmt(ExpPtr test, StmtPtr then_part, StmtPtr else_part = nullptr);
StmtPtr update(std::string name, ExpPtr value);
StmtPtr field_update(ExpPtr target, std::string field, ExpPtr value);
}  // namespace ast

bool is_keyword(std::string_view word);

// Parsing. All entry points throw xcom::Error(ErrorKind::Syntax) with a
// line/column location on malformed input.
ExpPtr parse_exp(std::string_view text);
StmtPtr parse_statement(std::string_view text);
// A program file holds one or more statements; several top-level statements
// are wrapped in an implicit Block.
StmtPtr parse_program(std::string_view text);

// One node per line, children indented by two spaces.
std::string dump_ast(const Statement& s);
std::string dump_exp(const Exp& e);
// Structured AST object with node-kind tags, serialized as JSON text.
std::string ast_json(const Statement& s, int indent = 2);

}  // namespace xcom
