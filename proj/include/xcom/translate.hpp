#pragma once

#include <functional>
#include <memory>
#include <string>

#include "xcom/core.hpp"
#include "xcom/interp.hpp"
#include "xcom/syntax.hpp"
#include "xcom/values.hpp"

namespace xcom {

// Translation-time type environment: innermost binding wins.
class TypeEnv {
 public:
  TypeEnv() = default;
  TypeEnv bind(std::string name, TypePtr type) const;
  bool binds(const std::string& name) const { return find(name) != nullptr; }
  // Throws an UnknownType error "Unknown type <name>".
  TypePtr lookup(const std::string& name) const;

 private:
  struct Node {
    std::string name;
    TypePtr type;
    std::shared_ptr<const Node> next;
  };
  explicit TypeEnv(std::shared_ptr<const Node> head) : head_(std::move(head)) {}
  const Node* find(const std::string& name) const;

  std::shared_ptr<const Node> head_;
};

// Translation with run-time types. Each statement receives the core
// expression that runs after it.
core::CorePtr desugar1_exp(const Exp& e);
core::CorePtr desugar1_stmt(const Statement& s, core::CorePtr next);
core::CorePtr desugar1_stmts(const std::vector<StmtPtr>& statements, core::CorePtr next);

// Translation with types resolved statically and records as a-lists. The
// continuation receives the type environment in force after the statement.
using TypeCont = std::function<core::CorePtr(const TypeEnv&)>;

core::CorePtr desugar2_exp(const Exp& e, const TypeEnv& types);
core::CorePtr desugar2_stmt(const Statement& s, const TypeEnv& types, const TypeCont& next);
core::CorePtr desugar2_stmts(const std::vector<StmtPtr>& statements, const TypeEnv& types,
                             const TypeCont& next);

// Whole-program entry points with a null final continuation.
core::CorePtr desugar1_program(const Statement& program);
core::CorePtr desugar2_program(const Statement& program);

// Translations whose final continuation reads every observable name into a
// record (typed record for desugar1, a-list for desugar2), so that the value
// of the whole program carries the observables.
core::CorePtr desugar1_observed(const Statement& program);
core::CorePtr desugar2_observed(const Statement& program);

// Evaluates an observed translation and prints each observable in
// comparison mode.
Observables observe_core(const core::CorePtr& observed, const Statement& program);

}  // namespace xcom
