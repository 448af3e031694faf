#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "xcom/core.hpp"
#include "xcom/interp.hpp"
#include "xcom/syntax.hpp"
#include "xcom/translate.hpp"

namespace xcom::vm {

enum class Op {
  PushTrue,
  PushFalse,
  PushInteger,
  LocalRef,
  SetLocal,
  Pop,
  And,
  Or,
  Add,
  Sub,
  Mod,
  Greater,
  Less,
  Eq,
  NewAList,
  AListBindI,
  FieldGetI,
  FieldSetI,
  Label,
  SkipFalse,
  Skip,
};

std::string_view op_name(Op op);

struct Instr {
  Op op;
  Integer number;       // PushInteger
  std::string name;     // SetLocal name, record key, or label symbol
  std::size_t index = 0;  // LocalRef/SetLocal slot, or resolved jump target

  bool operator==(const Instr&) const = default;
};

Instr push_true();
Instr push_false();
Instr push_integer(Integer n);
Instr local_ref(std::size_t index);
Instr set_local(std::string name, std::size_t index);
Instr pop();
Instr binary(BinOp op);
Instr new_alist();
Instr alist_bind(std::string key);
Instr field_get(std::string key);
Instr field_set(std::string key);
Instr label(std::string symbol);
Instr skip_false(std::string symbol);
Instr skip(std::string symbol);

using Code = std::vector<Instr>;

// `PushInteger(1)`, `SetLocal(x,0)`, `SkipFalse(L1)`; resolved jumps print
// their target index.
std::string render(const Instr& i, bool resolved = false);
std::string listing(const Code& code);
std::string resolved_listing(const Code& program);

// Compile-time variable environment: (name, slot) pairs, newest last. A name's
// innermost binding is its last occurrence.
using VarEnv = std::vector<std::pair<std::string, std::size_t>>;
using CompileCont = std::function<Code(const TypeEnv&, const VarEnv&)>;

// Holds the per-compilation counters: local slots are never reused and every
// loop or conditional gets fresh label symbols.
class Compiler {
 public:
  Code compile_exp(const Exp& e, const TypeEnv& types, const VarEnv& vars);
  Code compile_stmt(const Statement& s, const TypeEnv& types, const VarEnv& vars,
                    const CompileCont& next);
  Code compile_stmts(const std::vector<StmtPtr>& statements, const TypeEnv& types,
                     const VarEnv& vars, const CompileCont& next);

  std::size_t local_count() const { return slot_names_.size(); }
  const std::vector<std::string>& slot_names() const { return slot_names_; }

 private:
  Code compile_core(const core::CoreExp& e);
  std::string fresh_label(const char* stem);

  std::vector<std::string> slot_names_;
  std::size_t labels_ = 0;
};

Code trivial_cont(const TypeEnv&, const VarEnv&);

struct Compiled {
  Code code;                            // symbolic labels
  std::size_t local_count = 0;
  std::vector<std::string> slot_names;  // slot -> declared name
  VarEnv final_vars;                    // varEnv at the end of the top-level block
};

Compiled compile_program(const Statement& program);

// Removes labels and resolves jump targets to absolute indices. Throws a Label
// error on an undefined or duplicate label.
Code assemble(const Code& code);

struct VmState {
  std::vector<core::CoreValue> stack;
  std::vector<core::CoreValue> locals;
  std::size_t pc = 0;
  std::size_t steps = 0;
};

// Runs until pc falls off the end. `max_steps` = 0 means unbounded; otherwise
// exceeding it raises a Diverged error.
VmState exec_vm(const Code& program, std::size_t local_count, std::size_t max_steps = 0);

// Abstract stack-depth verification of a resolved program: no underflow, one
// depth per reachable pc, depth 0 at the end.
struct StackCheck {
  bool ok = true;
  std::string message;
  std::size_t max_depth = 0;
};
StackCheck verify_stack(const Code& program);

Observables observe_vm(const Statement& program);

}  // namespace xcom::vm
