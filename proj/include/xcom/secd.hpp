#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "xcom/integer.hpp"

namespace xcom::secd {

// Lambda calculus with integers and records.

struct LExp;
using LExpPtr = std::shared_ptr<const LExp>;

struct LVar {
  std::string name;
};
struct LLambda {
  std::string arg;
  LExpPtr body;
};
struct LApply {
  LExpPtr fun;
  LExpPtr arg;
};
struct LInt {
  Integer value;
};
struct LRecord {
  std::vector<std::pair<std::string, LExpPtr>> fields;
};

struct LExp {
  std::variant<LVar, LLambda, LApply, LInt, LRecord> node;
  bool parenthesized = false;  // written as ( ... ) in the source; kept for rendering
};

LExpPtr lvar(std::string name);
LExpPtr llambda(std::string arg, LExpPtr body);
LExpPtr lapply(LExpPtr fun, LExpPtr arg);
LExpPtr lint(Integer n);
LExpPtr lrecord(std::vector<std::pair<std::string, LExpPtr>> fields);
LExpPtr parens(LExpPtr e);

// Structural equality ignoring the parenthesized flag.
bool same(const LExp& a, const LExp& b);

// `\x.body`, left-associative application, `[f=e,...]` records. Throws a
// Syntax error with a location.
LExpPtr parse_lambda(std::string_view text);

// Source-like rendering: application as `f a`, lambdas as `\x.body`,
// parentheses only where the source had them.
std::string render(const LExp& e);

// Free variables in first-occurrence order.
std::vector<std::string> free_vars(const LExp& e);

// ---------------------------------------------------------------------------
// Machine

struct MValue;
using MValuePtr = std::shared_ptr<const MValue>;

// Persistent association list; extension shares the tail.
class MEnv {
 public:
  MEnv() = default;
  MEnv bind(std::string name, MValuePtr v) const;
  // Throws an Unbound error.
  MValuePtr lookup(const std::string& name) const;
  bool empty() const { return head_ == nullptr; }
  bool same_as(const MEnv& other) const { return head_ == other.head_; }
  // Bindings innermost first, stopping before `base` (exclusive) when `base` is
  // a suffix of this chain. Returns false if it is not.
  bool bindings_above(const MEnv& base,
                      std::vector<std::pair<std::string, MValuePtr>>& out) const;

 private:
  struct Node {
    std::string name;
    MValuePtr value;
    std::shared_ptr<const Node> next;
  };
  explicit MEnv(std::shared_ptr<const Node> head) : head_(std::move(head)) {}
  std::shared_ptr<const Node> head_;
};

struct Closure {
  std::string arg;
  MEnv env;
  LExpPtr body;
};
struct IntVal {
  Integer value;
};
struct RecVal {
  std::vector<std::pair<std::string, MValuePtr>> fields;
};
struct Builtin {
  std::string name;
  std::function<MValuePtr(const RecVal&)> fn;
};

struct MValue {
  std::variant<Closure, IntVal, RecVal, Builtin> v;
};

MValuePtr int_value(Integer n);

// Builtins add, sub, mult and eql over [fst=..,snd=..] records of integers;
// eql yields 1 or 0.
const std::vector<std::string>& builtin_names();
MValuePtr builtin(const std::string& name);
// Environment binding every builtin.
MEnv builtin_env();
// Environment binding only the builtins that occur free in `e`.
MEnv builtins_for(const LExp& e);

struct Do {
  LExpPtr exp;
};
struct App {};
struct MkRec {
  std::vector<std::string> names;
};
using Control = std::variant<Do, App, MkRec>;

struct State;
using Dump = std::shared_ptr<const State>;

// Stack and control keep their head at the back.
struct State {
  std::vector<MValuePtr> s;
  MEnv e;
  std::vector<Control> c;
  Dump d;
};

State initial_state(LExpPtr e, MEnv globals);
bool terminal(const State& st);
// One transition. Throws Unbound or Machine errors.
State trans_step(const State& st);

// `(s,e,c,d)` with sequences as [x1,x2], bindings n->v, closures <x,env,body>,
// App as @, MkRec as {f,g}, builtins as !name and the bottom dump as null.
// Environments that extend a non-empty `globals` print as E or E[...].
std::string render_state(const State& st, const MEnv& globals);
std::string render_value(const MValuePtr& v, const MEnv& globals);

// Dump depth of a state (0 for the outermost).
std::size_t depth(const State& st);

constexpr std::size_t kDefaultStepCap = 1'000'000;

// The single value left on the stack at the terminal state. Raises a Diverged
// error when `max_steps` transitions do not reach it.
MValuePtr run(LExpPtr e, const MEnv& globals, std::size_t max_steps = kDefaultStepCap);

// Every state from the initial one to the terminal one.
std::vector<State> trace(LExpPtr e, const MEnv& globals, std::size_t max_steps = kDefaultStepCap);

}  // namespace xcom::secd
