#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xcom/syntax.hpp"
#include "xcom/values.hpp"

namespace xcom::core {

// The small expression language both translators target. Every form yields a
// value; loops and assignments yield null.

struct CoreExp;
using CorePtr = std::shared_ptr<const CoreExp>;

using Atom = std::variant<Null, bool, Integer>;

struct CLit {
  Atom value;
};
struct CVar {
  std::string name;
};
struct CLet {
  std::string name;
  CorePtr init;
  CorePtr body;
};
struct CSeq {
  CorePtr first;
  CorePtr second;
};
struct CAssign {
  std::string name;
  CorePtr value;
};
struct CWhile {
  CorePtr test;
  CorePtr body;
};
struct CIf {
  CorePtr test;
  CorePtr then_branch;
  CorePtr else_branch;
};
struct CBin {
  BinOp op;
  CorePtr left;
  CorePtr right;
};
// Typed-record primitives (run-time types).
struct CMakeType {
  std::vector<std::string> field_names;
};
struct CNewOf {
  CorePtr type;
};
struct CFieldGet {
  CorePtr record;
  std::string name;
};
struct CFieldSet {
  CorePtr record;
  std::string name;
  CorePtr value;
};
// Association-list primitives (types erased).
struct CAListEmpty {};
struct CAListBind {
  CorePtr list;
  std::string key;
  CorePtr value;
};
struct CAListGet {
  CorePtr list;
  std::string key;
};
struct CAListSet {
  CorePtr list;
  std::string key;
  CorePtr value;
};

struct CoreExp {
  std::variant<CLit, CVar, CLet, CSeq, CAssign, CWhile, CIf, CBin, CMakeType, CNewOf, CFieldGet,
               CFieldSet, CAListEmpty, CAListBind, CAListGet, CAListSet>
      node;
};

// Builders.
CorePtr lit(Atom a);
CorePtr null_lit();
CorePtr var(std::string name);
CorePtr let(std::string name, CorePtr init, CorePtr body);
CorePtr seq(CorePtr first, CorePtr second);
CorePtr assign(std::string name, CorePtr value);
CorePtr while_loop(CorePtr test, CorePtr body);
CorePtr if_then_else(CorePtr test, CorePtr then_branch, CorePtr else_branch);
CorePtr bin(BinOp op, CorePtr left, CorePtr right);
CorePtr make_type(std::vector<std::string> field_names);
CorePtr new_of(CorePtr type);
CorePtr field_get(CorePtr record, std::string name);
CorePtr field_set(CorePtr record, std::string name, CorePtr value);
CorePtr alist_empty();
CorePtr alist_bind(CorePtr list, std::string key, CorePtr value);
CorePtr alist_get(CorePtr list, std::string key);
CorePtr alist_set(CorePtr list, std::string key, CorePtr value);

bool same(const CorePtr& a, const CorePtr& b);

// ---------------------------------------------------------------------------
// Values

struct CoreValue;

// Ordered key/value pairs with identity. `get` and `set` address the first
// pair whose key matches.
struct AList {
  std::vector<std::pair<std::string, CoreValue>> pairs;
};
using AListPtr = std::shared_ptr<AList>;

struct CoreValue {
  std::variant<Null, bool, Integer, TypePtr, RecordPtr, AListPtr> v;

  bool is_null() const { return std::holds_alternative<Null>(v); }
};

std::string kind_of(const CoreValue& v);

CoreValue alist_lookup(const AList& l, const std::string& key);
void alist_store(AList& l, const std::string& key, CoreValue value);

// Typed records from the core path store core values; conversion keeps the
// interpreter's Record layout.
CoreValue from_value(const Value& v);

// Same rendering as xcom::print_value; a-lists print like records without a
// type name.
std::string print_value(const CoreValue& v, PrintOptions opts = {});

// Persistent chain of shared mutable cells, same discipline as xcom::Env.
class CoreEnv {
 public:
  CoreEnv() = default;
  CoreEnv bind(std::string name, CoreValue v) const;
  CoreValue lookup(const std::string& name) const;
  void assign(const std::string& name, CoreValue v) const;

 private:
  struct Cell {
    std::string name;
    CoreValue value;
  };
  struct Node {
    std::shared_ptr<Cell> cell;
    std::shared_ptr<const Node> next;
  };
  explicit CoreEnv(std::shared_ptr<const Node> head) : head_(std::move(head)) {}
  Cell* find(const std::string& name) const;

  std::shared_ptr<const Node> head_;
};

CoreValue core_eval(const CoreExp& e, const CoreEnv& env = {});

// S-expression rendering, one construct per head symbol, on a single line.
std::string render(const CoreExp& e);
// The same rendering laid out by the pretty printer within `width` columns.
std::string render_pretty(const CoreExp& e, int width = 80);

// Node counts used by structural scans (type erasure, continuation linearity).
struct CoreStats {
  std::size_t typed_nodes = 0;  // CMakeType, CNewOf, CFieldGet, CFieldSet
  std::size_t alist_nodes = 0;  // CAListEmpty, CAListBind, CAListGet, CAListSet
  std::size_t total = 0;
};
CoreStats scan(const CoreExp& e);
// Occurrences of the exact node `needle` (by identity) inside `e`.
std::size_t count_occurrences(const CorePtr& e, const CorePtr& needle);

}  // namespace xcom::core
