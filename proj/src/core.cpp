#include "xcom/core.hpp"

#include <algorithm>
#include <sstream>

#include "xcom/prettydoc.hpp"

namespace xcom::core {

namespace {
template <class T>
CorePtr mk(T node) {
  return std::make_shared<const CoreExp>(CoreExp{std::move(node)});
}
}  // namespace

CorePtr lit(Atom a) { return mk(CLit{std::move(a)}); }
CorePtr null_lit() { return mk(CLit{Null{}}); }
CorePtr var(std::string name) { return mk(CVar{std::move(name)}); }
CorePtr let(std::string name, CorePtr init, CorePtr body) {
  return mk(CLet{std::move(name), std::move(init), std::move(body)});
}
CorePtr seq(CorePtr first, CorePtr second) { return mk(CSeq{std::move(first), std::move(second)}); }
CorePtr assign(std::string name, CorePtr value) {
  return mk(CAssign{std::move(name), std::move(value)});
}
CorePtr while_loop(CorePtr test, CorePtr body) {
  return mk(CWhile{std::move(test), std::move(body)});
}
CorePtr if_then_else(CorePtr test, CorePtr then_branch, CorePtr else_branch) {
  return mk(CIf{std::move(test), std::move(then_branch), std::move(else_branch)});
}
CorePtr bin(BinOp op, CorePtr left, CorePtr right) {
  return mk(CBin{op, std::move(left), std::move(right)});
}
CorePtr make_type(std::vector<std::string> field_names) {
  return mk(CMakeType{std::move(field_names)});
}
CorePtr new_of(CorePtr type) { return mk(CNewOf{std::move(type)}); }
CorePtr field_get(CorePtr record, std::string name) {
  return mk(CFieldGet{std::move(record), std::move(name)});
}
CorePtr field_set(CorePtr record, std::string name, CorePtr value) {
  return mk(CFieldSet{std::move(record), std::move(name), std::move(value)});
}
CorePtr alist_empty() { return mk(CAListEmpty{}); }
CorePtr alist_bind(CorePtr list, std::string key, CorePtr value) {
  return mk(CAListBind{std::move(list), std::move(key), std::move(value)});
}
CorePtr alist_get(CorePtr list, std::string key) {
  return mk(CAListGet{std::move(list), std::move(key)});
}
CorePtr alist_set(CorePtr list, std::string key, CorePtr value) {
  return mk(CAListSet{std::move(list), std::move(key), std::move(value)});
}

// ---------------------------------------------------------------------------
// Generic traversal: the head symbol, atom arguments and child expressions of
// each form. Rendering, equality and scans are all built on it.

namespace {

struct Shape {
  std::string head;                 // empty for atoms
  std::vector<std::string> atoms;   // names, keys, field lists (after head)
  std::vector<CorePtr> children;    // sub-expressions (after atoms)
};

std::string atom_text(const Atom& a) {
  if (std::holds_alternative<Null>(a)) return "null";
  if (auto* b = std::get_if<bool>(&a)) return *b ? "true" : "false";
  return to_string(std::get<Integer>(a));
}

Shape shape(const CoreExp& e) {
  return std::visit(
      [](const auto& n) -> Shape {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CLit>) return {"", {atom_text(n.value)}, {}};
        else if constexpr (std::is_same_v<T, CVar>) return {"", {n.name}, {}};
        else if constexpr (std::is_same_v<T, CLet>) return {"let", {n.name}, {n.init, n.body}};
        else if constexpr (std::is_same_v<T, CSeq>) return {"seq", {}, {n.first, n.second}};
        else if constexpr (std::is_same_v<T, CAssign>) return {"assign", {n.name}, {n.value}};
        else if constexpr (std::is_same_v<T, CWhile>) return {"while", {}, {n.test, n.body}};
        else if constexpr (std::is_same_v<T, CIf>)
          return {"if", {}, {n.test, n.then_branch, n.else_branch}};
        else if constexpr (std::is_same_v<T, CBin>)
          return {std::string(op_symbol(n.op)), {}, {n.left, n.right}};
        else if constexpr (std::is_same_v<T, CMakeType>) return {"make-type", n.field_names, {}};
        else if constexpr (std::is_same_v<T, CNewOf>) return {"new", {}, {n.type}};
        else if constexpr (std::is_same_v<T, CFieldGet>) return {"field-get", {}, {n.record}};
        else if constexpr (std::is_same_v<T, CFieldSet>)
          return {"field-set", {}, {n.record, n.value}};
        else if constexpr (std::is_same_v<T, CAListEmpty>) return {"alist-empty", {}, {}};
        else if constexpr (std::is_same_v<T, CAListBind>) return {"alist-bind", {}, {n.list, n.value}};
        else if constexpr (std::is_same_v<T, CAListGet>) return {"alist-get", {}, {n.list}};
        else return {"alist-set", {}, {n.list, n.value}};
      },
      e.node);
}

// Field/key names sit between the first child and the value for access forms:
// (field-get r head), (field-set r head v), (alist-bind l head v).
std::string key_of(const CoreExp& e) {
  if (auto* n = std::get_if<CFieldGet>(&e.node)) return n->name;
  if (auto* n = std::get_if<CFieldSet>(&e.node)) return n->name;
  if (auto* n = std::get_if<CAListBind>(&e.node)) return n->key;
  if (auto* n = std::get_if<CAListGet>(&e.node)) return n->key;
  if (auto* n = std::get_if<CAListSet>(&e.node)) return n->key;
  return {};
}

bool is_typed(const CoreExp& e) {
  return std::holds_alternative<CMakeType>(e.node) || std::holds_alternative<CNewOf>(e.node) ||
         std::holds_alternative<CFieldGet>(e.node) || std::holds_alternative<CFieldSet>(e.node);
}

bool is_alist(const CoreExp& e) {
  return std::holds_alternative<CAListEmpty>(e.node) ||
         std::holds_alternative<CAListBind>(e.node) ||
         std::holds_alternative<CAListGet>(e.node) || std::holds_alternative<CAListSet>(e.node);
}

void render_into(std::ostringstream& out, const CoreExp& e) {
  Shape s = shape(e);
  if (s.head.empty()) {
    out << s.atoms.front();
    return;
  }
  out << '(' << s.head;
  for (const auto& a : s.atoms) out << ' ' << a;
  std::string key = key_of(e);
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    out << ' ';
    render_into(out, *s.children[i]);
    if (i == 0 && !key.empty()) out << ' ' << key;
  }
  out << ')';
}

doc::DocPtr render_doc(const CoreExp& e) {
  Shape s = shape(e);
  if (s.head.empty()) return doc::just(s.atoms.front());
  std::string key = key_of(e);
  std::ostringstream flat;
  render_into(flat, e);

  std::string opener = "(" + s.head;
  for (const auto& a : s.atoms) opener += " " + a;
  doc::DocPtr broken = doc::just(opener);
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    doc::DocPtr child = render_doc(*s.children[i]);
    if (i == 0 && !key.empty()) child = doc::order(child, doc::just(" " + key));
    broken = doc::order(broken, doc::indent(2, doc::order(doc::newline(), child)));
  }
  broken = doc::order(broken, doc::just(")"));
  return doc::group(doc::just(flat.str()), broken);
}

}  // namespace

bool same(const CorePtr& a, const CorePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  Shape x = shape(*a), y = shape(*b);
  if (x.head != y.head || x.atoms != y.atoms || key_of(*a) != key_of(*b)) return false;
  return std::equal(x.children.begin(), x.children.end(), y.children.begin(), y.children.end(),
                    same);
}

std::string render(const CoreExp& e) {
  std::ostringstream out;
  render_into(out, e);
  return out.str();
}

std::string render_pretty(const CoreExp& e, int width) {
  return doc::pprint(render_doc(e), width, width);
}

CoreStats scan(const CoreExp& e) {
  CoreStats stats;
  std::vector<const CoreExp*> todo{&e};
  while (!todo.empty()) {
    const CoreExp* n = todo.back();
    todo.pop_back();
    ++stats.total;
    if (is_typed(*n)) ++stats.typed_nodes;
    if (is_alist(*n)) ++stats.alist_nodes;
    for (const auto& c : shape(*n).children) todo.push_back(c.get());
  }
  return stats;
}

std::size_t count_occurrences(const CorePtr& e, const CorePtr& needle) {
  if (e == needle) return 1;
  std::size_t n = 0;
  for (const auto& c : shape(*e).children) n += count_occurrences(c, needle);
  return n;
}

// ---------------------------------------------------------------------------
// Values

std::string kind_of(const CoreValue& v) {
  switch (v.v.index()) {
    case 0: return "null";
    case 1: return "boolean";
    case 2: return "integer";
    case 3: return "type";
    case 4: return "record";
    default: return "a-list";
  }
}

namespace {

[[noreturn]] void kind_error(const std::string& wanted, const CoreValue& got) {
  throw Error(ErrorKind::Type, "expected " + wanted + ", got " + kind_of(got));
}

bool as_bool(const CoreValue& v, const char* what) {
  if (auto* b = std::get_if<bool>(&v.v)) return *b;
  kind_error(what, v);
}

const Integer& as_int(const CoreValue& v, const char* what) {
  if (auto* n = std::get_if<Integer>(&v.v)) return *n;
  kind_error(what, v);
}

Value to_value(const CoreValue& v) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) return Value();
        else if constexpr (std::is_same_v<T, bool>) return Value(x);
        else if constexpr (std::is_same_v<T, Integer>) return Value(x);
        else if constexpr (std::is_same_v<T, RecordPtr>) return Value(x);
        else kind_error("a value storable in a record field", v);
      },
      v.v);
}

}  // namespace

CoreValue from_value(const Value& v) {
  return std::visit([](const auto& x) { return CoreValue{x}; }, v.storage());
}

CoreValue alist_lookup(const AList& l, const std::string& key) {
  for (const auto& [k, v] : l.pairs)
    if (k == key) return v;
  throw Error(ErrorKind::Field, "a-list has no key '" + key + "'");
}

void alist_store(AList& l, const std::string& key, CoreValue value) {
  for (auto& [k, v] : l.pairs) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  throw Error(ErrorKind::Field, "a-list has no key '" + key + "'");
}

namespace {

void print_into(std::ostringstream& out, const CoreValue& v, const PrintOptions& opts,
                std::vector<const void*>& path) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          out << "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, Integer>) {
          out << x;
        } else if constexpr (std::is_same_v<T, TypePtr>) {
          out << "<type";
          for (const auto& n : x->names) out << ' ' << n;
          out << '>';
        } else if constexpr (std::is_same_v<T, RecordPtr>) {
          out << xcom::print_value(Value(x), opts);
        } else {
          if (std::find(path.begin(), path.end(), x.get()) != path.end()) {
            out << "<loop>";
            return;
          }
          path.push_back(x.get());
          out << '[';
          for (std::size_t i = 0; i < x->pairs.size(); ++i) {
            if (i) out << ',';
            out << x->pairs[i].first << '=';
            print_into(out, x->pairs[i].second, opts, path);
          }
          out << ']';
          path.pop_back();
        }
      },
      v.v);
}

}  // namespace

std::string print_value(const CoreValue& v, PrintOptions opts) {
  std::ostringstream out;
  std::vector<const void*> path;
  print_into(out, v, opts, path);
  return out.str();
}

// ---------------------------------------------------------------------------
// Environment

CoreEnv CoreEnv::bind(std::string name, CoreValue v) const {
  auto cell = std::make_shared<Cell>(Cell{std::move(name), std::move(v)});
  return CoreEnv(std::make_shared<const Node>(Node{std::move(cell), head_}));
}

CoreEnv::Cell* CoreEnv::find(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->cell->name == name) return n->cell.get();
  return nullptr;
}

CoreValue CoreEnv::lookup(const std::string& name) const {
  if (Cell* c = find(name)) return c->value;
  throw Error(ErrorKind::Unbound, "unbound variable " + name);
}

void CoreEnv::assign(const std::string& name, CoreValue v) const {
  Cell* c = find(name);
  if (!c) throw Error(ErrorKind::Unbound, "unbound variable " + name);
  c->value = std::move(v);
}

// ---------------------------------------------------------------------------
// Evaluator

CoreValue core_eval(const CoreExp& e, const CoreEnv& env) {
  return std::visit(
      [&](const auto& n) -> CoreValue {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CLit>) {
          return std::visit([](const auto& a) { return CoreValue{a}; }, n.value);
        } else if constexpr (std::is_same_v<T, CVar>) {
          return env.lookup(n.name);
        } else if constexpr (std::is_same_v<T, CLet>) {
          CoreValue init = core_eval(*n.init, env);
          return core_eval(*n.body, env.bind(n.name, std::move(init)));
        } else if constexpr (std::is_same_v<T, CSeq>) {
          core_eval(*n.first, env);
          return core_eval(*n.second, env);
        } else if constexpr (std::is_same_v<T, CAssign>) {
          env.assign(n.name, core_eval(*n.value, env));
          return CoreValue{};
        } else if constexpr (std::is_same_v<T, CWhile>) {
          while (as_bool(core_eval(*n.test, env), "boolean test")) core_eval(*n.body, env);
          return CoreValue{};
        } else if constexpr (std::is_same_v<T, CIf>) {
          if (as_bool(core_eval(*n.test, env), "boolean test"))
            return core_eval(*n.then_branch, env);
          return core_eval(*n.else_branch, env);
        } else if constexpr (std::is_same_v<T, CBin>) {
          CoreValue l = core_eval(*n.left, env);
          CoreValue r = core_eval(*n.right, env);
          switch (n.op) {
            case BinOp::And:
              return CoreValue{as_bool(l, "boolean operand") && as_bool(r, "boolean operand")};
            case BinOp::Or:
              return CoreValue{as_bool(l, "boolean operand") || as_bool(r, "boolean operand")};
            case BinOp::Add:
            case BinOp::Sub:
            case BinOp::Mod:
              return CoreValue{
                  arith(n.op, as_int(l, "integer operand"), as_int(r, "integer operand"))};
            case BinOp::Greater:
            case BinOp::Less:
              return CoreValue{
                  compare(n.op, as_int(l, "integer operand"), as_int(r, "integer operand"))};
            case BinOp::Eq:
              return CoreValue{l.v.index() == r.v.index() && l.v == r.v};
          }
          return CoreValue{};
        } else if constexpr (std::is_same_v<T, CMakeType>) {
          return CoreValue{xcom::make_type("", n.field_names)};
        } else if constexpr (std::is_same_v<T, CNewOf>) {
          CoreValue t = core_eval(*n.type, env);
          auto* type = std::get_if<TypePtr>(&t.v);
          if (!type) kind_error("type", t);
          return CoreValue{instantiate(*type)};
        } else if constexpr (std::is_same_v<T, CFieldGet>) {
          CoreValue r = core_eval(*n.record, env);
          auto* rec = std::get_if<RecordPtr>(&r.v);
          if (!rec) kind_error("record in field reference", r);
          return from_value(record_lookup(**rec, n.name));
        } else if constexpr (std::is_same_v<T, CFieldSet>) {
          CoreValue r = core_eval(*n.record, env);
          auto* rec = std::get_if<RecordPtr>(&r.v);
          if (!rec) kind_error("record in field update", r);
          record_update(**rec, n.name, to_value(core_eval(*n.value, env)));
          return CoreValue{};
        } else if constexpr (std::is_same_v<T, CAListEmpty>) {
          return CoreValue{std::make_shared<AList>()};
        } else if constexpr (std::is_same_v<T, CAListBind>) {
          CoreValue l = core_eval(*n.list, env);
          auto* list = std::get_if<AListPtr>(&l.v);
          if (!list) kind_error("a-list", l);
          CoreValue value = core_eval(*n.value, env);
          auto extended = std::make_shared<AList>(**list);
          extended->pairs.emplace_back(n.key, std::move(value));
          return CoreValue{extended};
        } else if constexpr (std::is_same_v<T, CAListGet>) {
          CoreValue l = core_eval(*n.list, env);
          auto* list = std::get_if<AListPtr>(&l.v);
          if (!list) kind_error("record in field reference", l);
          return alist_lookup(**list, n.key);
        } else {
          CoreValue l = core_eval(*n.list, env);
          auto* list = std::get_if<AListPtr>(&l.v);
          if (!list) kind_error("record in field update", l);
          alist_store(**list, n.key, core_eval(*n.value, env));
          return CoreValue{};
        }
      },
      e.node);
}

}  // namespace xcom::core
