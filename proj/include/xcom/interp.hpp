#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xcom/syntax.hpp"
#include "xcom/values.hpp"

namespace xcom {

// Direct evaluator. Binary operators are strict: both operands are evaluated,
// left first, before the operator is applied.
Value eval_exp(const Exp& e, const Env& env);

// Declarations return the extended env. Block and While return the env they
// were given; updates made through shared bindings persist.
Env exec_statement(const Statement& s, const Env& env);

// Runs a closed program in the empty environment.
Env run_program(const Statement& s);

// The names declared directly in a program's top-level Block, in first
// declaration order. Empty for a program that is not a Block.
std::vector<std::string> observable_names(const Statement& program);

using Observables = std::vector<std::pair<std::string, std::string>>;

// Runs the program and reads every observable name at the end of the
// top-level block, printed in comparison mode.
Observables observe_interp(const Statement& program);

}  // namespace xcom
