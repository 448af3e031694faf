#include "xcom/secd.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "xcom/error.hpp"

namespace xcom::secd {

namespace {
template <class T>
LExpPtr mk(T node) {
  return std::make_shared<const LExp>(LExp{std::move(node), false});
}
}  // namespace

LExpPtr lvar(std::string name) { return mk(LVar{std::move(name)}); }
LExpPtr llambda(std::string arg, LExpPtr body) { return mk(LLambda{std::move(arg), std::move(body)}); }
LExpPtr lapply(LExpPtr fun, LExpPtr arg) { return mk(LApply{std::move(fun), std::move(arg)}); }
LExpPtr lint(Integer n) { return mk(LInt{std::move(n)}); }
LExpPtr lrecord(std::vector<std::pair<std::string, LExpPtr>> fields) {
  return mk(LRecord{std::move(fields)});
}
LExpPtr parens(LExpPtr e) {
  return std::make_shared<const LExp>(LExp{e->node, true});
}

bool same(const LExp& a, const LExp& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, LVar>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, LLambda>) return x.arg == y.arg && same(*x.body, *y.body);
        else if constexpr (std::is_same_v<T, LApply>)
          return same(*x.fun, *y.fun) && same(*x.arg, *y.arg);
        else if constexpr (std::is_same_v<T, LInt>) return x.value == y.value;
        else
          return std::equal(x.fields.begin(), x.fields.end(), y.fields.begin(), y.fields.end(),
                            [](const auto& f, const auto& g) {
                              return f.first == g.first && same(*f.second, *g.second);
                            });
      },
      a.node);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LExpPtr parse() {
    LExpPtr e = exp1();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  LExpPtr exp1() {
    skip_space();
    if (peek() == '\\') return lambda();
    return composite(atom());
  }

  LExpPtr lambda() {
    expect('\\');
    std::string arg = name();
    expect('.');
    return llambda(std::move(arg), exp1());
  }

  LExpPtr composite(LExpPtr a) {
    while (true) {
      skip_space();
      char c = peek();
      if (c == '\\') return lapply(std::move(a), lambda());
      if (!starts_atom(c)) return a;
      a = lapply(std::move(a), atom());
    }
  }

  static bool starts_atom(char c) {
    return c == '(' || c == '[' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  LExpPtr atom() {
    skip_space();
    char c = peek();
    if (c == '(') {
      ++pos_;
      LExpPtr e = exp1();
      expect(')');
      return parens(e);
    }
    if (c == '[') return record();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return lint(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    return lvar(name());
  }

  LExpPtr record() {
    expect('[');
    std::vector<std::pair<std::string, LExpPtr>> fields;
    do {
      std::string n = name();
      for (const auto& f : fields)
        if (f.first == n) fail("duplicate record field " + n);
      expect('=');
      fields.emplace_back(std::move(n), exp1());
      skip_space();
    } while (peek() == ',' && ++pos_);
    expect(']');
    return lrecord(std::move(fields));
  }

  std::string name() {
    skip_space();
    std::size_t start = pos_;
    char c = peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected a name");
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    SourceLoc loc{1, 1};
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
    throw Error(ErrorKind::Syntax, message, loc);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LExpPtr parse_lambda(std::string_view text) { return Parser(text).parse(); }

std::string render(const LExp& e) {
  std::string body = std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LVar>) return x.name;
        else if constexpr (std::is_same_v<T, LLambda>) return "\\" + x.arg + "." + render(*x.body);
        else if constexpr (std::is_same_v<T, LApply>) return render(*x.fun) + " " + render(*x.arg);
        else if constexpr (std::is_same_v<T, LInt>) return to_string(x.value);
        else {
          std::string out = "[";
          for (std::size_t i = 0; i < x.fields.size(); ++i) {
            if (i) out += ',';
            out += x.fields[i].first + "=" + render(*x.fields[i].second);
          }
          return out + "]";
        }
      },
      e.node);
  return e.parenthesized ? "(" + body + ")" : body;
}

namespace {
void collect_free(const LExp& e, std::vector<std::string>& bound, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LVar>) {
          if (std::find(bound.begin(), bound.end(), x.name) == bound.end() &&
              std::find(out.begin(), out.end(), x.name) == out.end())
            out.push_back(x.name);
        } else if constexpr (std::is_same_v<T, LLambda>) {
          bound.push_back(x.arg);
          collect_free(*x.body, bound, out);
          bound.pop_back();
        } else if constexpr (std::is_same_v<T, LApply>) {
          collect_free(*x.fun, bound, out);
          collect_free(*x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, LRecord>) {
          for (const auto& f : x.fields) collect_free(*f.second, bound, out);
        }
      },
      e.node);
}
}  // namespace

std::vector<std::string> free_vars(const LExp& e) {
  std::vector<std::string> bound, out;
  collect_free(e, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Values and environments

MEnv MEnv::bind(std::string name, MValuePtr v) const {
  return MEnv(std::make_shared<const Node>(Node{std::move(name), std::move(v), head_}));
}

MValuePtr MEnv::lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return n->value;
  throw Error(ErrorKind::Unbound, "unbound variable " + name);
}

bool MEnv::bindings_above(const MEnv& base,
                          std::vector<std::pair<std::string, MValuePtr>>& out) const {
  out.clear();
  for (auto n = head_; n; n = n->next) {
    if (n == base.head_) return true;
    out.emplace_back(n->name, n->value);
  }
  return base.head_ == nullptr;
}

MValuePtr int_value(Integer n) {
  return std::make_shared<const MValue>(MValue{IntVal{std::move(n)}});
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"add", "sub", "mult", "eql"};
  return names;
}

namespace {

const Integer& int_field(const RecVal& r, const std::string& builtin, const char* field) {
  for (const auto& [name, v] : r.fields) {
    if (name != field) continue;
    if (auto* i = std::get_if<IntVal>(&v->v)) return i->value;
    throw Error(ErrorKind::Type, builtin + ": field " + field + " is not an integer");
  }
  throw Error(ErrorKind::Field, builtin + ": argument has no field " + field);
}

}  // namespace

MValuePtr builtin(const std::string& name) {
  auto binary = [name](auto op) {
    return [name, op](const RecVal& r) {
      return int_value(op(int_field(r, name, "fst"), int_field(r, name, "snd")));
    };
  };
  std::function<MValuePtr(const RecVal&)> fn;
  if (name == "add") fn = binary([](const Integer& a, const Integer& b) { return Integer(a + b); });
  else if (name == "sub") fn = binary([](const Integer& a, const Integer& b) { return Integer(a - b); });
  else if (name == "mult") fn = binary([](const Integer& a, const Integer& b) { return Integer(a * b); });
  else if (name == "eql") fn = binary([](const Integer& a, const Integer& b) { return Integer(a == b ? 1 : 0); });
  else throw Error(ErrorKind::Unbound, "no builtin named " + name);
  return std::make_shared<const MValue>(MValue{Builtin{name, std::move(fn)}});
}

MEnv builtin_env() {
  MEnv env;
  for (const auto& n : builtin_names()) env = env.bind(n, builtin(n));
  return env;
}

MEnv builtins_for(const LExp& e) {
  MEnv env;
  auto free = free_vars(e);
  for (const auto& n : builtin_names())
    if (std::find(free.begin(), free.end(), n) != free.end()) env = env.bind(n, builtin(n));
  return env;
}

// ---------------------------------------------------------------------------
// Transitions

State initial_state(LExpPtr e, MEnv globals) {
  return State{{}, std::move(globals), {Do{std::move(e)}}, nullptr};
}

bool terminal(const State& st) { return st.c.empty() && !st.d; }

State trans_step(const State& st) {
  if (terminal(st)) throw Error(ErrorKind::Machine, "no transition from a terminal state");
  State next = st;
  if (st.c.empty()) {
    // (5) return to the dumped state
    if (st.s.size() != 1)
      throw Error(ErrorKind::Machine, "function body left " + std::to_string(st.s.size()) +
                                          " values on the stack");
    next = *st.d;
    next.s.push_back(st.s.back());
    return next;
  }
  Control head = std::move(next.c.back());
  next.c.pop_back();
  auto pop = [&](const char* what) {
    if (next.s.empty()) throw Error(ErrorKind::Machine, std::string("stack underflow in ") + what);
    MValuePtr v = std::move(next.s.back());
    next.s.pop_back();
    return v;
  };
  if (auto* d = std::get_if<Do>(&head)) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, LVar>) {
            next.s.push_back(st.e.lookup(x.name));  // (1)
          } else if constexpr (std::is_same_v<T, LApply>) {
            next.c.push_back(App{});  // (2): argument first, then operator, then @
            next.c.push_back(Do{x.fun});
            next.c.push_back(Do{x.arg});
          } else if constexpr (std::is_same_v<T, LLambda>) {
            next.s.push_back(
                std::make_shared<const MValue>(MValue{Closure{x.arg, st.e, x.body}}));  // (4)
          } else if constexpr (std::is_same_v<T, LInt>) {
            next.s.push_back(int_value(x.value));
          } else {
            std::vector<std::string> names;
            for (const auto& f : x.fields) names.push_back(f.first);
            next.c.push_back(MkRec{std::move(names)});
            for (auto it = x.fields.rbegin(); it != x.fields.rend(); ++it)
              next.c.push_back(Do{it->second});
          }
        },
        d->exp->node);
    return next;
  }
  if (auto* m = std::get_if<MkRec>(&head)) {
    RecVal rec;
    rec.fields.resize(m->names.size());
    for (std::size_t i = m->names.size(); i-- > 0;) rec.fields[i] = {m->names[i], pop("record construction")};
    next.s.push_back(std::make_shared<const MValue>(MValue{std::move(rec)}));
    return next;
  }
  // App
  MValuePtr fun = pop("application");
  MValuePtr arg = pop("application");
  if (auto* c = std::get_if<Closure>(&fun->v)) {
    // (3) save the caller and enter the body
    Dump saved = std::make_shared<const State>(State{next.s, st.e, next.c, st.d});
    return State{{}, c->env.bind(c->arg, arg), {Do{c->body}}, std::move(saved)};
  }
  if (auto* b = std::get_if<Builtin>(&fun->v)) {
    auto* r = std::get_if<RecVal>(&arg->v);
    if (!r) throw Error(ErrorKind::Type, "builtin " + b->name + " expects a record argument");
    next.s.push_back(b->fn(*r));
    return next;
  }
  throw Error(ErrorKind::Machine, "cannot apply a non-function");
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string render_env(const MEnv& env, const MEnv& globals);

std::string render_value_in(const MValue& v, const MEnv& globals) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Closure>)
          return "<" + x.arg + "," + render_env(x.env, globals) + "," + render(*x.body) + ">";
        else if constexpr (std::is_same_v<T, IntVal>) return to_string(x.value);
        else if constexpr (std::is_same_v<T, Builtin>) return "!" + x.name;
        else {
          std::string out = "[";
          for (std::size_t i = 0; i < x.fields.size(); ++i) {
            if (i) out += ',';
            out += x.fields[i].first + "=" + render_value_in(*x.fields[i].second, globals);
          }
          return out + "]";
        }
      },
      v.v);
}

std::string render_bindings(const std::vector<std::pair<std::string, MValuePtr>>& bindings,
                            const MEnv& globals) {
  std::string out = "[";
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    if (i) out += ',';
    out += bindings[i].first + "->" + render_value_in(*bindings[i].second, globals);
  }
  return out + "]";
}

std::string render_env(const MEnv& env, const MEnv& globals) {
  std::vector<std::pair<std::string, MValuePtr>> bindings;
  if (!globals.empty() && env.bindings_above(globals, bindings)) {
    if (bindings.empty()) return "E";
    return "E" + render_bindings(bindings, globals);
  }
  env.bindings_above(MEnv{}, bindings);
  return render_bindings(bindings, globals);
}

std::string render_control(const Control& c) {
  if (auto* d = std::get_if<Do>(&c)) return render(*d->exp);
  if (auto* m = std::get_if<MkRec>(&c)) {
    std::string out = "{";
    for (std::size_t i = 0; i < m->names.size(); ++i) out += (i ? "," : "") + m->names[i];
    return out + "}";
  }
  return "@";
}

}  // namespace

std::string render_value(const MValuePtr& v, const MEnv& globals) {
  return render_value_in(*v, globals);
}

std::string render_state(const State& st, const MEnv& globals) {
  std::string out = "([";
  for (auto it = st.s.rbegin(); it != st.s.rend(); ++it)
    out += (it == st.s.rbegin() ? "" : ",") + render_value_in(**it, globals);
  out += "]," + render_env(st.e, globals) + ",[";
  for (auto it = st.c.rbegin(); it != st.c.rend(); ++it)
    out += (it == st.c.rbegin() ? "" : ",") + render_control(*it);
  out += "],";
  out += st.d ? render_state(*st.d, globals) : "null";
  return out + ")";
}

std::size_t depth(const State& st) {
  std::size_t n = 0;
  for (const State* p = st.d.get(); p; p = p->d.get()) ++n;
  return n;
}

namespace {
[[noreturn]] void diverged(std::size_t max_steps) {
  throw Error(ErrorKind::Diverged,
              "SECD machine did not terminate within " + std::to_string(max_steps) + " steps");
}
MValuePtr result_of(const State& st) {
  if (st.s.size() != 1)
    throw Error(ErrorKind::Machine,
                "terminal state holds " + std::to_string(st.s.size()) + " stack values");
  return st.s.back();
}
}  // namespace

MValuePtr run(LExpPtr e, const MEnv& globals, std::size_t max_steps) {
  State st = initial_state(std::move(e), globals);
  for (std::size_t steps = 0; !terminal(st); ++steps) {
    if (steps >= max_steps) diverged(max_steps);
    st = trans_step(st);
  }
  return result_of(st);
}

std::vector<State> trace(LExpPtr e, const MEnv& globals, std::size_t max_steps) {
  std::vector<State> states{initial_state(std::move(e), globals)};
  while (!terminal(states.back())) {
    if (states.size() > max_steps) diverged(max_steps);
    states.push_back(trans_step(states.back()));
  }
  return states;
}

}  // namespace xcom::secd
