#include "xcom/interp.hpp"

#include <algorithm>

namespace xcom {

namespace {

// Attaches a source location to errors that do not have one yet.
template <class F>
auto located(SourceLoc loc, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.location().known() || !loc.known()) throw;
    throw Error(e.kind(), e.message(), loc);
  }
}

bool test_value(const Exp& test, const Env& env) {
  return eval_exp(test, env).as_bool("boolean test");
}

}  // namespace

Value eval_exp(const Exp& e, const Env& env) {
  return located(e.loc, [&]() -> Value {
    return std::visit(
        [&](const auto& n) -> Value {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Const>) {
            if (auto* b = std::get_if<bool>(&n.value)) return Value(*b);
            return Value(std::get<Integer>(n.value));
          } else if constexpr (std::is_same_v<T, Var>) {
            return env.lookup(n.name);
          } else if constexpr (std::is_same_v<T, BinExp>) {
            Value left = eval_exp(*n.left, env);
            Value right = eval_exp(*n.right, env);
            return apply_binop(n.op, left, right);
          } else if constexpr (std::is_same_v<T, New>) {
            return Value(instantiate(env.lookup_type(n.type_name)));
          } else {
            Value target = eval_exp(*n.target, env);
            return record_lookup(*target.as_record("record in field reference"), n.field);
          }
        },
        e.node);
  });
}

Env exec_statement(const Statement& s, const Env& env) {
  return located(s.loc, [&]() -> Env {
    return std::visit(
        [&](const auto& n) -> Env {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Block>) {
            Env inner = env;
            for (const auto& stmt : n.statements) inner = exec_statement(*stmt, inner);
            return env;
          } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
            return env.bind(n.name, make_type(n.name, n.field_names));
          } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
            return env.bind(n.name, eval_exp(*n.init, env));
          } else if constexpr (std::is_same_v<T, While>) {
            Env inner = env;
            while (test_value(*n.test, inner)) inner = exec_statement(*n.body, inner);
            return env;
          } else if constexpr (std::is_same_v<T, If>) {
            if (test_value(*n.test, env)) return exec_statement(*n.then_part, env);
            if (n.else_part) return exec_statement(*n.else_part, env);
            return env;
          } else if constexpr (std::is_same_v<T, Update>) {
            env.update(n.name, eval_exp(*n.value, env));
            return env;
          } else {
            Value target = eval_exp(*n.target, env);
            const RecordPtr& r = target.as_record("record in field update");
            record_update(*r, n.field, eval_exp(*n.value, env));
            return env;
          }
        },
        s.node);
  });
}

Env run_program(const Statement& s) { return exec_statement(s, Env{}); }

std::vector<std::string> observable_names(const Statement& program) {
  std::vector<std::string> names;
  const auto* block = std::get_if<Block>(&program.node);
  if (!block) return names;
  for (const auto& s : block->statements) {
    if (const auto* d = std::get_if<ValueDeclaration>(&s->node)) {
      if (std::find(names.begin(), names.end(), d->name) == names.end()) names.push_back(d->name);
    }
  }
  return names;
}

Observables observe_interp(const Statement& program) {
  Observables out;
  const auto* block = std::get_if<Block>(&program.node);
  if (!block) {
    run_program(program);
    return out;
  }
  Env env;
  for (const auto& s : block->statements) env = exec_statement(*s, env);
  for (const auto& name : observable_names(program))
    out.emplace_back(name, print_value(env.lookup(name), PrintOptions{false}));
  return out;
}

}  // namespace xcom
