#include "xcom/translate.hpp"

namespace xcom {

TypeEnv TypeEnv::bind(std::string name, TypePtr type) const {
  return TypeEnv(std::make_shared<const Node>(Node{std::move(name), std::move(type), head_}));
}

const TypeEnv::Node* TypeEnv::find(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return n;
  return nullptr;
}

TypePtr TypeEnv::lookup(const std::string& name) const {
  if (const Node* n = find(name)) return n->type;
  throw Error(ErrorKind::UnknownType, "Unknown type " + name);
}

namespace {

core::CorePtr literal(const Const& c) {
  if (auto* b = std::get_if<bool>(&c.value)) return core::lit(*b);
  return core::lit(std::get<Integer>(c.value));
}

}  // namespace

// ---------------------------------------------------------------------------
// Run-time types

core::CorePtr desugar1_exp(const Exp& e) {
  return std::visit(
      [](const auto& n) -> core::CorePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) return literal(n);
        else if constexpr (std::is_same_v<T, Var>) return core::var(n.name);
        else if constexpr (std::is_same_v<T, BinExp>)
          return core::bin(n.op, desugar1_exp(*n.left), desugar1_exp(*n.right));
        else if constexpr (std::is_same_v<T, New>) return core::new_of(core::var(n.type_name));
        else return core::field_get(desugar1_exp(*n.target), n.field);
      },
      e.node);
}

core::CorePtr desugar1_stmts(const std::vector<StmtPtr>& statements, core::CorePtr next) {
  for (auto it = statements.rbegin(); it != statements.rend(); ++it)
    next = desugar1_stmt(**it, std::move(next));
  return next;
}

core::CorePtr desugar1_stmt(const Statement& s, core::CorePtr next) {
  return std::visit(
      [&](const auto& n) -> core::CorePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          return core::seq(desugar1_stmts(n.statements, core::null_lit()), next);
        } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
          return core::let(n.name, core::make_type(n.field_names), next);
        } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
          return core::let(n.name, desugar1_exp(*n.init), next);
        } else if constexpr (std::is_same_v<T, While>) {
          return core::seq(
              core::while_loop(desugar1_exp(*n.test), desugar1_stmt(*n.body, core::null_lit())),
              next);
        } else if constexpr (std::is_same_v<T, If>) {
          core::CorePtr else_branch = n.else_part ? desugar1_stmt(*n.else_part, next) : next;
          return core::if_then_else(desugar1_exp(*n.test), desugar1_stmt(*n.then_part, next),
                                    else_branch);
        } else if constexpr (std::is_same_v<T, Update>) {
          return core::seq(core::assign(n.name, desugar1_exp(*n.value)), next);
        } else {
          return core::seq(
              core::field_set(desugar1_exp(*n.target), n.field, desugar1_exp(*n.value)), next);
        }
      },
      s.node);
}

// ---------------------------------------------------------------------------
// Static types

core::CorePtr desugar2_exp(const Exp& e, const TypeEnv& types) {
  return std::visit(
      [&](const auto& n) -> core::CorePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          return literal(n);
        } else if constexpr (std::is_same_v<T, Var>) {
          return core::var(n.name);
        } else if constexpr (std::is_same_v<T, BinExp>) {
          return core::bin(n.op, desugar2_exp(*n.left, types), desugar2_exp(*n.right, types));
        } else if constexpr (std::is_same_v<T, New>) {
          if (!types.binds(n.type_name))
            throw Error(ErrorKind::UnknownType, "Unknown type " + n.type_name, e.loc);
          core::CorePtr list = core::alist_empty();
          for (const auto& name : types.lookup(n.type_name)->names)
            list = core::alist_bind(list, name, core::null_lit());
          return list;
        } else {
          return core::alist_get(desugar2_exp(*n.target, types), n.field);
        }
      },
      e.node);
}

namespace {

core::CorePtr ignore_types(const TypeEnv&) { return core::null_lit(); }

core::CorePtr desugar2_chain(const std::vector<StmtPtr>& statements, std::size_t i,
                             const TypeEnv& types, const TypeCont& next) {
  if (i == statements.size()) return next(types);
  return desugar2_stmt(*statements[i], types, [&](const TypeEnv& inner) {
    return desugar2_chain(statements, i + 1, inner, next);
  });
}

}  // namespace

core::CorePtr desugar2_stmts(const std::vector<StmtPtr>& statements, const TypeEnv& types,
                             const TypeCont& next) {
  return desugar2_chain(statements, 0, types, next);
}

core::CorePtr desugar2_stmt(const Statement& s, const TypeEnv& types, const TypeCont& next) {
  return std::visit(
      [&](const auto& n) -> core::CorePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          return core::seq(desugar2_stmts(n.statements, types, ignore_types), next(types));
        } else if constexpr (std::is_same_v<T, TypeDeclaration>) {
          return next(types.bind(n.name, make_type(n.name, n.field_names)));
        } else if constexpr (std::is_same_v<T, ValueDeclaration>) {
          return core::let(n.name, desugar2_exp(*n.init, types), next(types));
        } else if constexpr (std::is_same_v<T, While>) {
          return core::seq(core::while_loop(desugar2_exp(*n.test, types),
                                            desugar2_stmt(*n.body, types, ignore_types)),
                           next(types));
        } else if constexpr (std::is_same_v<T, If>) {
          core::CorePtr test = desugar2_exp(*n.test, types);
          core::CorePtr then_branch = desugar2_stmt(*n.then_part, types, next);
          core::CorePtr else_branch =
              n.else_part ? desugar2_stmt(*n.else_part, types, next) : next(types);
          return core::if_then_else(test, then_branch, else_branch);
        } else if constexpr (std::is_same_v<T, Update>) {
          return core::seq(core::assign(n.name, desugar2_exp(*n.value, types)), next(types));
        } else {
          return core::seq(core::alist_set(desugar2_exp(*n.target, types), n.field,
                                           desugar2_exp(*n.value, types)),
                           next(types));
        }
      },
      s.node);
}

// ---------------------------------------------------------------------------
// Whole programs

core::CorePtr desugar1_program(const Statement& program) {
  return desugar1_stmt(program, core::null_lit());
}

core::CorePtr desugar2_program(const Statement& program) {
  return desugar2_stmt(program, TypeEnv{}, ignore_types);
}

namespace {

// Observables are read at the end of the top-level block, so the observing
// continuation goes inside that block rather than after it.
const Block* top_block(const Statement& program) { return std::get_if<Block>(&program.node); }

core::CorePtr observe_typed(const std::vector<std::string>& names) {
  const std::string type = "__Obs", rec = "__o";
  core::CorePtr body = core::var(rec);
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    body = core::seq(core::field_set(core::var(rec), *it, core::var(*it)), body);
  return core::let(type, core::make_type(names),
                   core::let(rec, core::new_of(core::var(type)), body));
}

core::CorePtr observe_alist(const std::vector<std::string>& names) {
  core::CorePtr list = core::alist_empty();
  for (const auto& name : names) list = core::alist_bind(list, name, core::var(name));
  return list;
}

}  // namespace

core::CorePtr desugar1_observed(const Statement& program) {
  auto names = observable_names(program);
  if (const Block* b = top_block(program)) return desugar1_stmts(b->statements, observe_typed(names));
  return desugar1_stmt(program, observe_typed(names));
}

core::CorePtr desugar2_observed(const Statement& program) {
  auto names = observable_names(program);
  TypeCont k = [&](const TypeEnv&) { return observe_alist(names); };
  if (const Block* b = top_block(program)) return desugar2_stmts(b->statements, TypeEnv{}, k);
  return desugar2_stmt(program, TypeEnv{}, k);
}

Observables observe_core(const core::CorePtr& observed, const Statement& program) {
  auto names = observable_names(program);
  core::CoreValue result = core::core_eval(*observed);
  PrintOptions cmp{false};
  Observables out;
  if (auto* rec = std::get_if<RecordPtr>(&result.v)) {
    for (const auto& name : names)
      out.emplace_back(name, print_value(record_lookup(**rec, name), cmp));
  } else if (auto* list = std::get_if<core::AListPtr>(&result.v)) {
    for (const auto& name : names)
      out.emplace_back(name, core::print_value(core::alist_lookup(**list, name), cmp));
  } else {
    throw Error(ErrorKind::Type, "observed program yielded " + core::kind_of(result));
  }
  return out;
}

}  // namespace xcom
