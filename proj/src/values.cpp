#include "xcom/values.hpp"

#include <algorithm>
#include <sstream>

namespace xcom {

std::size_t TypeDesc::index_of(const std::string& field) const {
  auto it = std::find(names.begin(), names.end(), field);
  if (it == names.end()) {
    std::string type_name = name.empty() ? std::string("record") : "record of type " + name;
    throw Error(ErrorKind::Field, type_name + " has no field '" + field + "'");
  }
  return static_cast<std::size_t>(it - names.begin());
}

TypePtr make_type(std::string name, std::vector<std::string> names) {
  return std::make_shared<const TypeDesc>(TypeDesc{std::move(name), std::move(names)});
}

std::string kind_of(const Value& v) {
  if (v.is_null()) return "null";
  if (v.is_bool()) return "boolean";
  if (v.is_int()) return "integer";
  return "record";
}

namespace {
[[noreturn]] void kind_error(const char* wanted, const Value& got) {
  throw Error(ErrorKind::Type, std::string("expected ") + wanted + ", got " + kind_of(got));
}
}  // namespace

bool Value::as_bool(const char* context) const {
  if (auto* b = std::get_if<bool>(&v_)) return *b;
  kind_error(context, *this);
}

const Integer& Value::as_int(const char* context) const {
  if (auto* n = std::get_if<Integer>(&v_)) return *n;
  kind_error(context, *this);
}

const RecordPtr& Value::as_record(const char* context) const {
  if (auto* r = std::get_if<RecordPtr>(&v_)) return *r;
  kind_error(context, *this);
}

Integer arith(BinOp op, const Integer& a, const Integer& b) {
  switch (op) {
    case BinOp::Add: return a + b;
    case BinOp::Sub: return a - b;
    case BinOp::Mod:
      if (b == 0) throw Error(ErrorKind::DivisionByZero, "mod by zero");
      return floor_mod(a, b);
    default: break;
  }
  throw Error(ErrorKind::Type, "not an arithmetic operator: " + std::string(op_symbol(op)));
}

bool compare(BinOp op, const Integer& a, const Integer& b) {
  switch (op) {
    case BinOp::Greater: return a > b;
    case BinOp::Less: return a < b;
    case BinOp::Eq: return a == b;
    default: break;
  }
  throw Error(ErrorKind::Type, "not a relational operator: " + std::string(op_symbol(op)));
}

Value bin_and(const Value& a, const Value& b) {
  bool x = a.as_bool("boolean operand of 'and'");
  bool y = b.as_bool("boolean operand of 'and'");
  return Value(x && y);
}

Value bin_or(const Value& a, const Value& b) {
  bool x = a.as_bool("boolean operand of 'or'");
  bool y = b.as_bool("boolean operand of 'or'");
  return Value(x || y);
}

Value bin_add(const Value& a, const Value& b) {
  return Value(arith(BinOp::Add, a.as_int("integer operand of '+'"), b.as_int("integer operand of '+'")));
}

Value bin_sub(const Value& a, const Value& b) {
  return Value(arith(BinOp::Sub, a.as_int("integer operand of '-'"), b.as_int("integer operand of '-'")));
}

Value bin_mod(const Value& a, const Value& b) {
  return Value(
      arith(BinOp::Mod, a.as_int("integer operand of 'mod'"), b.as_int("integer operand of 'mod'")));
}

Value bin_greater(const Value& a, const Value& b) {
  return Value(compare(BinOp::Greater, a.as_int("integer operand of '>'"),
                       b.as_int("integer operand of '>'")));
}

Value bin_less(const Value& a, const Value& b) {
  return Value(compare(BinOp::Less, a.as_int("integer operand of '<'"),
                       b.as_int("integer operand of '<'")));
}

Value bin_eq(const Value& a, const Value& b) {
  const auto& x = a.storage();
  const auto& y = b.storage();
  if (x.index() != y.index()) return Value(false);
  return Value(x == y);  // RecordPtr compares by address
}

Value apply_binop(BinOp op, const Value& a, const Value& b) {
  switch (op) {
    case BinOp::And: return bin_and(a, b);
    case BinOp::Or: return bin_or(a, b);
    case BinOp::Greater: return bin_greater(a, b);
    case BinOp::Less: return bin_less(a, b);
    case BinOp::Eq: return bin_eq(a, b);
    case BinOp::Add: return bin_add(a, b);
    case BinOp::Sub: return bin_sub(a, b);
    case BinOp::Mod: return bin_mod(a, b);
  }
  return Value();
}

Value record_lookup(const Record& r, const std::string& name) {
  return r.fields.at(r.type->index_of(name));
}

void record_update(Record& r, const std::string& name, Value v) {
  r.fields.at(r.type->index_of(name)) = std::move(v);
}

RecordPtr instantiate(const TypePtr& t) {
  return std::make_shared<Record>(Record{t, std::vector<Value>(t->names.size())});
}

// ---------------------------------------------------------------------------

Env Env::bind(std::string name, Value v) const {
  auto b = std::make_shared<Binding>(Binding{std::move(name), std::move(v)});
  return Env(std::make_shared<const Node>(Node{std::move(b), head_}));
}

Env Env::bind(std::string name, TypePtr t) const {
  auto b = std::make_shared<Binding>(Binding{std::move(name), std::move(t)});
  return Env(std::make_shared<const Node>(Node{std::move(b), head_}));
}

Binding* Env::find(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->binding->name == name) return n->binding.get();
  return nullptr;
}

Value Env::lookup(const std::string& name) const {
  Binding* b = find(name);
  if (!b) throw Error(ErrorKind::Unbound, "unbound variable " + name);
  if (auto* v = std::get_if<Value>(&b->content)) return *v;
  throw Error(ErrorKind::Type, name + " names a type, not a value");
}

TypePtr Env::lookup_type(const std::string& name) const {
  Binding* b = find(name);
  if (!b) throw Error(ErrorKind::Unbound, "unbound type " + name);
  if (auto* t = std::get_if<TypePtr>(&b->content)) return *t;
  throw Error(ErrorKind::Type, name + " names a value, not a type");
}

void Env::update(const std::string& name, Value v) const {
  Binding* b = find(name);
  if (!b) throw Error(ErrorKind::Unbound, "unbound variable " + name);
  if (!std::holds_alternative<Value>(b->content))
    throw Error(ErrorKind::Type, "cannot assign to type " + name);
  b->content = std::move(v);
}

std::size_t Env::size() const {
  std::size_t n = 0;
  for (const Node* p = head_.get(); p; p = p->next.get()) ++n;
  return n;
}

void Env::for_each(const std::function<void(const Binding&)>& fn) const {
  for (const Node* n = head_.get(); n; n = n->next.get()) fn(*n->binding);
}

// ---------------------------------------------------------------------------

namespace {

void print_into(std::ostringstream& out, const Value& v, const PrintOptions& opts,
                std::vector<const Record*>& path) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          out << "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, Integer>) {
          out << x;
        } else {
          const Record* r = x.get();
          if (std::find(path.begin(), path.end(), r) != path.end()) {
            out << "<loop>";
            return;
          }
          path.push_back(r);
          if (opts.type_names) out << r->type->name;
          out << '[';
          for (std::size_t i = 0; i < r->fields.size(); ++i) {
            if (i) out << ',';
            out << r->type->names[i] << '=';
            print_into(out, r->fields[i], opts, path);
          }
          out << ']';
          path.pop_back();
        }
      },
      v.storage());
}

}  // namespace

std::string print_value(const Value& v, PrintOptions opts) {
  std::ostringstream out;
  std::vector<const Record*> path;
  print_into(out, v, opts, path);
  return out.str();
}

}  // namespace xcom
