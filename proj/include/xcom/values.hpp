#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "xcom/error.hpp"
#include "xcom/integer.hpp"
#include "xcom/syntax.hpp"

namespace xcom {

// A record type: the ordered field names. `name` is the declared type name and
// is used only for display.
struct TypeDesc {
  std::string name;
  std::vector<std::string> names;

  // Index of `field` in `names`; throws a Field error naming the type.
  std::size_t index_of(const std::string& field) const;
};
using TypePtr = std::shared_ptr<const TypeDesc>;

TypePtr make_type(std::string name, std::vector<std::string> names);

struct Record;
// Records have identity; copies of a Value alias the same record.
// TODO: cyclic record graphs are never reclaimed; move records into a
// per-execution arena once executions need to release memory early.
using RecordPtr = std::shared_ptr<Record>;

struct Null {
  bool operator==(const Null&) const { return true; }
};

class Value {
 public:
  using Storage = std::variant<Null, bool, Integer, RecordPtr>;

  Value() = default;
  Value(Null) {}
  Value(bool b) : v_(b) {}
  Value(Integer n) : v_(std::move(n)) {}
  Value(int n) : v_(Integer(n)) {}
  Value(RecordPtr r) : v_(std::move(r)) {}

  bool is_null() const { return std::holds_alternative<Null>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_int() const { return std::holds_alternative<Integer>(v_); }
  bool is_record() const { return std::holds_alternative<RecordPtr>(v_); }

  // Typed accessors; throw a Type error naming `context` on mismatch.
  bool as_bool(const char* context = "boolean") const;
  const Integer& as_int(const char* context = "integer") const;
  const RecordPtr& as_record(const char* context = "record") const;

  const Storage& storage() const { return v_; }

 private:
  Storage v_;
};

struct Record {
  TypePtr type;
  std::vector<Value> fields;
};

std::string kind_of(const Value& v);

// Value operations. Operands are already evaluated.
Value bin_and(const Value& a, const Value& b);
Value bin_or(const Value& a, const Value& b);
Value bin_add(const Value& a, const Value& b);
Value bin_sub(const Value& a, const Value& b);
Value bin_mod(const Value& a, const Value& b);
Value bin_greater(const Value& a, const Value& b);
Value bin_less(const Value& a, const Value& b);
// Atoms compare by value, records by identity, mixed kinds are unequal.
Value bin_eq(const Value& a, const Value& b);
Value apply_binop(BinOp op, const Value& a, const Value& b);

// Shared integer/boolean arithmetic, reused by the core evaluator and the VM.
Integer arith(BinOp op, const Integer& a, const Integer& b);
bool compare(BinOp op, const Integer& a, const Integer& b);

Value record_lookup(const Record& r, const std::string& name);
void record_update(Record& r, const std::string& name, Value v);
// Fresh record with every field Null.
RecordPtr instantiate(const TypePtr& t);

// A mutable cell in an environment chain. Holds a value or a record type.
struct Binding {
  std::string name;
  std::variant<Value, TypePtr> content;
};

// Persistent chain of shared bindings. `bind` extends without touching the
// receiver; `update` mutates the innermost binding in place, so every chain
// sharing that binding observes the change.
class Env {
 public:
  Env() = default;

  Env bind(std::string name, Value v) const;
  Env bind(std::string name, TypePtr t) const;

  // Innermost binding for `name`, or null.
  Binding* find(const std::string& name) const;
  bool binds(const std::string& name) const { return find(name) != nullptr; }

  Value lookup(const std::string& name) const;
  TypePtr lookup_type(const std::string& name) const;
  void update(const std::string& name, Value v) const;

  bool empty() const { return head_ == nullptr; }
  std::size_t size() const;
  // Bindings innermost first.
  void for_each(const std::function<void(const Binding&)>& fn) const;
  // Identity of the chain head, for aliasing checks.
  const void* identity() const { return head_.get(); }

 private:
  struct Node {
    std::shared_ptr<Binding> binding;
    std::shared_ptr<const Node> next;
  };
  explicit Env(std::shared_ptr<const Node> head) : head_(std::move(head)) {}

  std::shared_ptr<const Node> head_;
};

struct PrintOptions {
  // Comparison mode omits type names so typed records and a-lists print alike.
  bool type_names = true;
};

// `IntV n` -> decimal, booleans -> true/false, null -> null, records ->
// `TypeName[f1=...,f2=...]`, back-references on the current path -> `<loop>`.
std::string print_value(const Value& v, PrintOptions opts = {});

}  // namespace xcom
