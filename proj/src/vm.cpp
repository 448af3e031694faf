#include "xcom/vm.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace xcom::vm {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::PushTrue: return "PushTrue";
    case Op::PushFalse: return "PushFalse";
    case Op::PushInteger: return "PushInteger";
    case Op::LocalRef: return "LocalRef";
    case Op::SetLocal: return "SetLocal";
    case Op::Pop: return "Pop";
    case Op::And: return "And";
    case Op::Or: return "Or";
    case Op::Add: return "Add";
    case Op::Sub: return "Sub";
    case Op::Mod: return "Mod";
    case Op::Greater: return "Greater";
    case Op::Less: return "Less";
    case Op::Eq: return "Eq";
    case Op::NewAList: return "NewAList";
    case Op::AListBindI: return "AListBindI";
    case Op::FieldGetI: return "FieldGetI";
    case Op::FieldSetI: return "FieldSetI";
    case Op::Label: return "Label";
    case Op::SkipFalse: return "SkipFalse";
    case Op::Skip: return "Skip";
  }
  return "?";
}

Instr push_true() { return {Op::PushTrue, 0, "", 0}; }
Instr push_false() { return {Op::PushFalse, 0, "", 0}; }
Instr push_integer(Integer n) { return {Op::PushInteger, std::move(n), "", 0}; }
Instr local_ref(std::size_t index) { return {Op::LocalRef, 0, "", index}; }
Instr set_local(std::string name, std::size_t index) {
  return {Op::SetLocal, 0, std::move(name), index};
}
Instr pop() { return {Op::Pop, 0, "", 0}; }
Instr new_alist() { return {Op::NewAList, 0, "", 0}; }
Instr alist_bind(std::string key) { return {Op::AListBindI, 0, std::move(key), 0}; }
Instr field_get(std::string key) { return {Op::FieldGetI, 0, std::move(key), 0}; }
Instr field_set(std::string key) { return {Op::FieldSetI, 0, std::move(key), 0}; }
Instr label(std::string symbol) { return {Op::Label, 0, std::move(symbol), 0}; }
Instr skip_false(std::string symbol) { return {Op::SkipFalse, 0, std::move(symbol), 0}; }
Instr skip(std::string symbol) { return {Op::Skip, 0, std::move(symbol), 0}; }

Instr binary(BinOp op) {
  switch (op) {
    case BinOp::And: return {Op::And, 0, "", 0};
    case BinOp::Or: return {Op::Or, 0, "", 0};
    case BinOp::Greater: return {Op::Greater, 0, "", 0};
    case BinOp::Less: return {Op::Less, 0, "", 0};
    case BinOp::Eq: return {Op::Eq, 0, "", 0};
    case BinOp::Add: return {Op::Add, 0, "", 0};
    case BinOp::Sub: return {Op::Sub, 0, "", 0};
    case BinOp::Mod: return {Op::Mod, 0, "", 0};
  }
  return {Op::Eq, 0, "", 0};
}

std::string render(const Instr& i, bool resolved) {
  std::string out(op_name(i.op));
  switch (i.op) {
    case Op::PushInteger: return out + "(" + to_string(i.number) + ")";
    case Op::LocalRef: return out + "(" + std::to_string(i.index) + ")";
    case Op::SetLocal: return out + "(" + i.name + "," + std::to_string(i.index) + ")";
    case Op::AListBindI:
    case Op::FieldGetI:
    case Op::FieldSetI:
    case Op::Label: return out + "(" + i.name + ")";
    case Op::SkipFalse:
    case Op::Skip:
      return out + "(" + (resolved ? std::to_string(i.index) : i.name) + ")";
    default: return out;
  }
}

std::string listing(const Code& code) {
  std::string out;
  for (const auto& i : code) out += render(i) + "\n";
  return out;
}

std::string resolved_listing(const Code& program) {
  std::ostringstream out;
  for (std::size_t pc = 0; pc < program.size(); ++pc)
    out << pc << ": " << render(program[pc], true) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Compiler

namespace {

Code operator+(Code a, const Code& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::optional<std::size_t> slot_of(const VarEnv& vars, const std::string& name) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

std::size_t require_slot(const VarEnv& vars, const std::string& name, SourceLoc loc) {
  if (auto slot = slot_of(vars, name)) return *slot;
  throw Error(ErrorKind::Unbound, "Unbound variable " + name, loc);
}

}  // namespace

Code trivial_cont(const TypeEnv&, const VarEnv&) { return {}; }

std::string Compiler::fresh_label(const char* stem) {
  return std::string(stem) + std::to_string(labels_++);
}

Code Compiler::compile_core(const core::CoreExp& e) {
  if (std::holds_alternative<core::CAListEmpty>(e.node)) return {new_alist()};
  if (auto* b = std::get_if<core::CAListBind>(&e.node)) {
    auto* value = std::get_if<core::CLit>(&b->value->node);
    if (value && std::holds_alternative<Null>(value->value))
      return compile_core(*b->list) + Code{alist_bind(b->key)};
  }
  throw Error(ErrorKind::Machine, "cannot compile core form " + core::render(e));
}

Code Compiler::compile_exp(const Exp& e, const TypeEnv& types, const VarEnv& vars) {
  return std::visit(
      [&](const auto& n) -> Code {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          if (auto* b = std::get_if<bool>(&n.value)) return {*b ? push_true() : push_false()};
          return {push_integer(std::get<Integer>(n.value))};
        } else if constexpr (std::is_same_v<T, Var>) {
          return {local_ref(require_slot(vars, n.name, e.loc))};
        } else if constexpr (std::is_same_v<T, BinExp>) {
          return compile_exp(*n.left, types, vars) + compile_exp(*n.right, types, vars) +
                 Code{binary(n.op)};
        } else if constexpr (std::is_same_v<T, New>) {
          return compile_core(*desugar2_exp(e, types));
        } else {
          return compile_exp(*n.target, types, vars) + Code{field_get(n.field)};
        }
      },
      e.node);
}

Code Compiler::compile_stmts(const std::vector<StmtPtr>& statements, const TypeEnv& types,
                             const VarEnv& vars, const CompileCont& next) {
  std::function<Code(std::size_t, const TypeEnv&, const VarEnv&)> chain =
      [&](std::size_t i, const TypeEnv& t, const VarEnv& v) -> Code {
    if (i == statements.size()) return next(t, v);
    return compile_stmt(*statements[i], t, v, [&, i](const TypeEnv& t2, const VarEnv& v2) {
      return chain(i + 1, t2, v2);
    });
  };
  return chain(0, types, vars);
}

Code Compiler::compile_stmt(const Statement& s, const TypeEnv& types, const VarEnv& vars,
                            const CompileCont& next) {
  return std::visit(
      [&](const auto& n) -> Code {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          return compile_stmts(n.statements, types, vars, trivial_cont) + next(types, vars);
        } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
          return next(types.bind(n.name, make_type(n.name, n.field_names)), vars);
        } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
          Code init = compile_exp(*n.init, types, vars);
          std::size_t slot = slot_names_.size();
          slot_names_.push_back(n.name);
          VarEnv extended = vars;
          extended.emplace_back(n.name, slot);
          return init + Code{set_local(n.name, slot), pop()} + next(types, extended);
        } else if constexpr (std::is_same_v<T, While>) {
          std::string start = fresh_label("START"), end = fresh_label("END");
          Code test = compile_exp(*n.test, types, vars);
          Code body = compile_stmt(*n.body, types, vars, trivial_cont);
          return Code{label(start)} + test + Code{skip_false(end)} + body +
                 Code{skip(start), label(end)} + next(types, vars);
        } else if constexpr (std::is_same_v<T, If>) {
          std::string else_label = fresh_label("ELSE"), end = fresh_label("ENDIF");
          Code test = compile_exp(*n.test, types, vars);
          Code then_code = compile_stmt(*n.then_part, types, vars, trivial_cont);
          Code else_code =
              n.else_part ? compile_stmt(*n.else_part, types, vars, trivial_cont) : Code{};
          return test + Code{skip_false(else_label)} + then_code +
                 Code{skip(end), label(else_label)} + else_code + Code{label(end)} +
                 next(types, vars);
        } else if constexpr (std::is_same_v<T, Update>) {
          std::size_t slot = require_slot(vars, n.name, s.loc);
          return compile_exp(*n.value, types, vars) + Code{set_local(n.name, slot), pop()} +
                 next(types, vars);
        } else {
          return compile_exp(*n.target, types, vars) + compile_exp(*n.value, types, vars) +
                 Code{field_set(n.field)} + next(types, vars);
        }
      },
      s.node);
}

Compiled compile_program(const Statement& program) {
  Compiler c;
  Compiled out;
  CompileCont capture = [&](const TypeEnv&, const VarEnv& vars) {
    out.final_vars = vars;
    return Code{};
  };
  if (auto* b = std::get_if<Block>(&program.node))
    out.code = c.compile_stmts(b->statements, TypeEnv{}, VarEnv{}, capture);
  else
    out.code = c.compile_stmt(program, TypeEnv{}, VarEnv{}, capture);
  out.local_count = c.local_count();
  out.slot_names = c.slot_names();
  return out;
}

Code assemble(const Code& code) {
  std::map<std::string, std::size_t> targets;
  std::size_t pc = 0;
  for (const auto& i : code) {
    if (i.op != Op::Label) {
      ++pc;
      continue;
    }
    if (!targets.emplace(i.name, pc).second)
      throw Error(ErrorKind::Label, "duplicate label " + i.name);
  }
  Code out;
  out.reserve(pc);
  for (const auto& i : code) {
    if (i.op == Op::Label) continue;
    Instr r = i;
    if (i.op == Op::Skip || i.op == Op::SkipFalse) {
      auto it = targets.find(i.name);
      if (it == targets.end()) throw Error(ErrorKind::Label, "undefined label " + i.name);
      r.index = it->second;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Machine

namespace {

[[noreturn]] void kind_error(const std::string& wanted, const core::CoreValue& got) {
  throw Error(ErrorKind::Type, "expected " + wanted + ", got " + core::kind_of(got));
}

bool as_bool(const core::CoreValue& v, const char* what) {
  if (auto* b = std::get_if<bool>(&v.v)) return *b;
  kind_error(what, v);
}

const Integer& as_int(const core::CoreValue& v) {
  if (auto* n = std::get_if<Integer>(&v.v)) return *n;
  kind_error("integer operand", v);
}

const core::AListPtr& as_alist(const core::CoreValue& v, const char* what) {
  if (auto* l = std::get_if<core::AListPtr>(&v.v)) return *l;
  kind_error(what, v);
}

core::CoreValue pop_value(std::vector<core::CoreValue>& stack) {
  if (stack.empty()) throw Error(ErrorKind::Machine, "operand stack underflow");
  core::CoreValue v = std::move(stack.back());
  stack.pop_back();
  return v;
}

}  // namespace

VmState exec_vm(const Code& program, std::size_t local_count, std::size_t max_steps) {
  VmState st;
  st.locals.resize(local_count);
  auto& stack = st.stack;
  while (st.pc < program.size()) {
    if (max_steps && st.steps >= max_steps)
      throw Error(ErrorKind::Diverged, "VM exceeded " + std::to_string(max_steps) + " steps");
    ++st.steps;
    const Instr& i = program[st.pc++];
    switch (i.op) {
      case Op::PushTrue: stack.push_back({true}); break;
      case Op::PushFalse: stack.push_back({false}); break;
      case Op::PushInteger: stack.push_back({i.number}); break;
      case Op::LocalRef: stack.push_back(st.locals.at(i.index)); break;
      case Op::SetLocal:
        if (stack.empty()) throw Error(ErrorKind::Machine, "operand stack underflow");
        st.locals.at(i.index) = stack.back();
        break;
      case Op::Pop: pop_value(stack); break;
      case Op::And:
      case Op::Or: {
        bool r = as_bool(pop_value(stack), "boolean operand");
        bool l = as_bool(pop_value(stack), "boolean operand");
        stack.push_back({i.op == Op::And ? (l && r) : (l || r)});
        break;
      }
      case Op::Add:
      case Op::Sub:
      case Op::Mod: {
        core::CoreValue r = pop_value(stack), l = pop_value(stack);
        BinOp op = i.op == Op::Add ? BinOp::Add : i.op == Op::Sub ? BinOp::Sub : BinOp::Mod;
        stack.push_back({arith(op, as_int(l), as_int(r))});
        break;
      }
      case Op::Greater:
      case Op::Less: {
        core::CoreValue r = pop_value(stack), l = pop_value(stack);
        stack.push_back(
            {compare(i.op == Op::Greater ? BinOp::Greater : BinOp::Less, as_int(l), as_int(r))});
        break;
      }
      case Op::Eq: {
        core::CoreValue r = pop_value(stack), l = pop_value(stack);
        stack.push_back({l.v.index() == r.v.index() && l.v == r.v});
        break;
      }
      case Op::NewAList: stack.push_back({std::make_shared<core::AList>()}); break;
      case Op::AListBindI: {
        auto extended = std::make_shared<core::AList>(*as_alist(pop_value(stack), "a-list"));
        extended->pairs.emplace_back(i.name, core::CoreValue{});
        stack.push_back({std::move(extended)});
        break;
      }
      case Op::FieldGetI: {
        core::CoreValue l = pop_value(stack);
        stack.push_back(core::alist_lookup(*as_alist(l, "record in field reference"), i.name));
        break;
      }
      case Op::FieldSetI: {
        core::CoreValue v = pop_value(stack), l = pop_value(stack);
        core::alist_store(*as_alist(l, "record in field update"), i.name, std::move(v));
        break;
      }
      case Op::Label: break;
      case Op::SkipFalse:
        if (!as_bool(pop_value(stack), "boolean test")) st.pc = i.index;
        break;
      case Op::Skip: st.pc = i.index; break;
    }
  }
  return st;
}

StackCheck verify_stack(const Code& program) {
  StackCheck result;
  std::vector<std::optional<std::size_t>> depth(program.size() + 1);
  std::vector<std::size_t> work{0};
  depth[0] = 0;
  auto fail = [&](std::size_t pc, const std::string& what) {
    result.ok = false;
    result.message = "pc " + std::to_string(pc) + ": " + what;
  };
  auto flow = [&](std::size_t pc, std::size_t target, std::size_t d) {
    if (target > program.size()) {
      fail(pc, "jump out of range");
      return;
    }
    if (!depth[target]) {
      depth[target] = d;
      work.push_back(target);
    } else if (*depth[target] != d) {
      fail(target, "inconsistent stack depth " + std::to_string(*depth[target]) + " vs " +
                       std::to_string(d));
    }
  };
  while (!work.empty() && result.ok) {
    std::size_t pc = work.back();
    work.pop_back();
    std::size_t d = *depth[pc];
    result.max_depth = std::max(result.max_depth, d);
    if (pc == program.size()) continue;
    const Instr& i = program[pc];
    std::size_t needs = 0;
    long delta = 0;
    switch (i.op) {
      case Op::PushTrue:
      case Op::PushFalse:
      case Op::PushInteger:
      case Op::LocalRef:
      case Op::NewAList: delta = 1; break;
      case Op::SetLocal:
      case Op::AListBindI:
      case Op::FieldGetI: needs = 1; break;
      case Op::Pop:
      case Op::SkipFalse: needs = 1; delta = -1; break;
      case Op::FieldSetI: needs = 2; delta = -2; break;
      case Op::Label:
      case Op::Skip: break;
      default: needs = 2; delta = -1; break;
    }
    if (d < needs) {
      fail(pc, std::string("stack underflow at ") + std::string(op_name(i.op)));
      break;
    }
    std::size_t after = static_cast<std::size_t>(static_cast<long>(d) + delta);
    if (i.op == Op::Skip) {
      flow(pc, i.index, after);
    } else {
      flow(pc, pc + 1, after);
      if (i.op == Op::SkipFalse) flow(pc, i.index, after);
    }
  }
  if (result.ok && depth[program.size()] && *depth[program.size()] != 0)
    fail(program.size(), "final stack depth " + std::to_string(*depth[program.size()]));
  return result;
}

Observables observe_vm(const Statement& program) {
  Compiled c = compile_program(program);
  VmState st = exec_vm(assemble(c.code), c.local_count);
  Observables out;
  for (const auto& name : observable_names(program)) {
    auto slot = slot_of(c.final_vars, name);
    if (!slot) throw Error(ErrorKind::Unbound, "Unbound variable " + name);
    out.emplace_back(name, core::print_value(st.locals.at(*slot), PrintOptions{false}));
  }
  return out;
}

}  // namespace xcom::vm
