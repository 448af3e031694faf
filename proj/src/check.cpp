#include "xcom/check.hpp"

#include <sstream>

#include "xcom/core.hpp"
#include "xcom/format.hpp"
#include "xcom/translate.hpp"
#include "xcom/vm.hpp"

namespace xcom::check {

// ---------------------------------------------------------------------------
// Generator

namespace {

enum class Kind { Int, Bool, Rec, Any };

struct VarInfo {
  std::string name;
  Kind kind;
  std::string type;  // for Rec
  bool counter = false;
};

struct TypeInfo {
  std::string name;
  std::vector<std::string> fields;
};

constexpr int kMaxDepth = 3;
constexpr int kMaxTypes = 4;
constexpr int kMaxCount = 6;

class Gen {
 public:
  explicit Gen(std::mt19937_64& rng) : rng_(rng) {}

  StmtPtr program() {
    std::vector<StmtPtr> body;
    for (int i = 0, n = pick(3); i < n; ++i) body.push_back(type_decl());
    for (int i = 0, n = 2 + pick(3); i < n; ++i) value_decl(body);
    for (int i = 0, n = 3 + pick(5); i < n; ++i) statement(body, 0);
    return ast::block(std::move(body));
  }

 private:
  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return pick(100) < percent; }

  // Visible variables: the innermost binding of each name.
  std::vector<const VarInfo*> visible(const std::function<bool(const VarInfo&)>& want) const {
    std::vector<const VarInfo*> out;
    std::vector<std::string> seen;
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
      if (std::find(seen.begin(), seen.end(), it->name) != seen.end()) continue;
      seen.push_back(it->name);
      if (want(*it)) out.push_back(&*it);
    }
    // Deterministic, declaration-ordered choice list.
    std::reverse(out.begin(), out.end());
    return out;
  }

  const TypeInfo* type_named(const std::string& name) const {
    for (auto it = types_.rbegin(); it != types_.rend(); ++it)
      if (it->name == name) return &*it;
    return nullptr;
  }

  std::vector<const VarInfo*> records_with_fields() const {
    return visible([&](const VarInfo& v) {
      return v.kind == Kind::Rec && !type_named(v.type)->fields.empty();
    });
  }

  template <class T>
  const T& choose(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(pick(static_cast<int>(xs.size())))];
  }

  // -- expressions

  ExpPtr int_exp(int depth) {
    int roll = pick(10);
    if (depth > 0 && roll < 4) {
      switch (pick(3)) {
        case 0: return ast::bin(BinOp::Add, int_exp(depth - 1), int_exp(depth - 1));
        case 1: return ast::bin(BinOp::Sub, int_exp(depth - 1), int_exp(depth - 1));
        default: return ast::bin(BinOp::Mod, int_exp(depth - 1), ast::int_const(1 + pick(7)));
      }
    }
    auto ints = visible([](const VarInfo& v) { return v.kind == Kind::Int; });
    if (!ints.empty() && roll < 7) return ast::var(choose(ints)->name);
    return ast::int_const(pick(21));
  }

  ExpPtr bool_exp(int depth) {
    int roll = pick(10);
    if (depth > 0 && roll < 5) {
      switch (pick(5)) {
        case 0: return ast::bin(BinOp::Greater, int_exp(depth - 1), int_exp(depth - 1));
        case 1: return ast::bin(BinOp::Less, int_exp(depth - 1), int_exp(depth - 1));
        case 2: return ast::bin(BinOp::And, bool_exp(depth - 1), bool_exp(depth - 1));
        case 3: return ast::bin(BinOp::Or, bool_exp(depth - 1), bool_exp(depth - 1));
        default: return ast::bin(BinOp::Eq, any_exp(depth - 1), any_exp(depth - 1));
      }
    }
    auto bools = visible([](const VarInfo& v) { return v.kind == Kind::Bool; });
    if (!bools.empty() && roll < 8) return ast::var(choose(bools)->name);
    return ast::bool_const(chance(50));
  }

  // An expression of the given record type, or null if none is available.
  ExpPtr rec_exp(const std::string& type) {
    auto recs = visible([&](const VarInfo& v) { return v.kind == Kind::Rec && v.type == type; });
    if (!recs.empty() && chance(50)) return ast::var(choose(recs)->name);
    return ast::new_record(type);
  }

  ExpPtr field_read() {
    auto recs = records_with_fields();
    if (recs.empty()) return nullptr;
    const VarInfo* r = choose(recs);
    return ast::field_ref(ast::var(r->name), choose(type_named(r->type)->fields));
  }

  // Any kind at all; used where every kind is acceptable.
  ExpPtr any_exp(int depth) {
    switch (pick(4)) {
      case 0: return int_exp(depth);
      case 1: return bool_exp(depth);
      case 2:
        if (!types_.empty()) return rec_exp(choose(types_).name);
        return int_exp(depth);
      default:
        if (ExpPtr f = field_read()) return f;
        return bool_exp(depth);
    }
  }

  // -- statements

  StmtPtr type_decl() {
    TypeInfo t{"T" + std::to_string(type_count_++), {}};
    for (int i = 0, n = pick(4); i < n; ++i) t.fields.push_back("f" + std::to_string(i));
    types_.push_back(t);
    return ast::type_decl(t.name, t.fields);
  }

  void value_decl(std::vector<StmtPtr>& out) {
    std::string name = "v" + std::to_string(pick(10));
    VarInfo info{name, Kind::Int, "", false};
    ExpPtr init;
    int roll = pick(10);
    if (roll < 4) {
      init = int_exp(2);
    } else if (roll < 6) {
      info.kind = Kind::Bool;
      init = bool_exp(2);
    } else if (roll < 9 && !types_.empty()) {
      info.kind = Kind::Rec;
      info.type = choose(types_).name;
      init = rec_exp(info.type);
    } else if ((init = field_read())) {
      info.kind = Kind::Any;
    } else {
      init = int_exp(2);
    }
    out.push_back(ast::value_decl(name, init));
    vars_.push_back(std::move(info));
  }

  bool update(std::vector<StmtPtr>& out) {
    auto targets = visible([](const VarInfo& v) { return !v.counter; });
    if (targets.empty()) return false;
    const VarInfo* v = choose(targets);
    ExpPtr value;
    switch (v->kind) {
      case Kind::Int: value = int_exp(2); break;
      case Kind::Bool: value = bool_exp(2); break;
      case Kind::Rec: value = rec_exp(v->type); break;
      case Kind::Any: value = any_exp(1); break;
    }
    out.push_back(ast::update(v->name, value));
    return true;
  }

  bool field_update(std::vector<StmtPtr>& out) {
    auto recs = records_with_fields();
    if (recs.empty()) return false;
    const VarInfo* r = choose(recs);
    std::string field = choose(type_named(r->type)->fields);
    out.push_back(ast::field_update(ast::var(r->name), field, any_exp(1)));
    return true;
  }

  // A nested block; `last` (if any) is appended after the random statements.
  StmtPtr block(int depth, StmtPtr last = nullptr) {
    std::size_t vars = vars_.size(), types = types_.size();
    std::vector<StmtPtr> body;
    for (int i = 0, n = 1 + pick(4); i < n; ++i) statement(body, depth);
    if (last) body.push_back(std::move(last));
    vars_.resize(vars);
    types_.resize(types);
    return ast::block(std::move(body));
  }

  void while_loop(std::vector<StmtPtr>& out, int depth) {
    std::string counter = "c" + std::to_string(counters_++);
    out.push_back(ast::value_decl(counter, ast::int_const(pick(kMaxCount + 1))));
    vars_.push_back({counter, Kind::Int, "", true});
    StmtPtr body = block(depth + 1, ast::update(counter, ast::bin(BinOp::Sub, ast::var(counter),
                                                               ast::int_const(1))));
    out.push_back(ast::while_loop(
        ast::bin(BinOp::Greater, ast::var(counter), ast::int_const(0)), body));
  }

  void if_stmt(std::vector<StmtPtr>& out, int depth) {
    ExpPtr test = bool_exp(2);
    StmtPtr then_part = block(depth + 1);
    StmtPtr else_part = chance(60) ? block(depth + 1) : nullptr;
    out.push_back(ast::if_stmt(test, then_part, else_part));
  }

  void statement(std::vector<StmtPtr>& out, int depth) {
    // Nesting gets rarer the deeper we are.
    bool nest = depth < kMaxDepth && chance(100 - 30 * depth);
    int roll = pick(100);
    if (roll < 30) return value_decl(out);
    if (roll < 55 && update(out)) return;
    if (roll < 70 && field_update(out)) return;
    if (roll < 80 && nest) return while_loop(out, depth);
    if (roll < 90 && nest) return if_stmt(out, depth);
    if (roll < 94 && nest) {
      out.push_back(block(depth + 1));
      return;
    }
    if (type_count_ < kMaxTypes) {
      out.push_back(type_decl());
      return;
    }
    value_decl(out);
  }

  std::mt19937_64& rng_;
  std::vector<VarInfo> vars_;
  std::vector<TypeInfo> types_;
  int type_count_ = 0;
  int counters_ = 0;
};

}  // namespace

StmtPtr Generator::program() { return Gen(rng_).program(); }

// ---------------------------------------------------------------------------
// Backends

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Interp: return "interp";
    case Backend::Desugar1: return "desugar1";
    case Backend::Desugar2: return "desugar2";
    case Backend::Vm: return "vm";
  }
  return "?";
}

std::string describe(const Outcome& o) {
  if (!o.ok()) return "error (" + std::string(kind_name(*o.error)) + "): " + o.message;
  std::string out;
  for (const auto& [name, value] : *o.observables) {
    if (!out.empty()) out += ", ";
    out += name + "=" + value;
  }
  return out.empty() ? "(no observables)" : out;
}

Outcome run_backend(Backend b, const Statement& program) {
  Outcome o;
  try {
    switch (b) {
      case Backend::Interp: o.observables = observe_interp(program); break;
      case Backend::Desugar1:
        o.observables = observe_core(desugar1_observed(program), program);
        break;
      case Backend::Desugar2:
        o.observables = observe_core(desugar2_observed(program), program);
        break;
      case Backend::Vm: o.observables = vm::observe_vm(program); break;
    }
  } catch (const Error& e) {
    o.observables.reset();
    o.error = e.kind();
    o.message = e.what();
  }
  return o;
}

namespace {
bool same_outcome(const Outcome& a, const Outcome& b) {
  if (a.ok() != b.ok()) return false;
  if (a.ok()) return *a.observables == *b.observables;
  return *a.error == *b.error;
}
bool unknown_type(const Outcome& o) { return !o.ok() && *o.error == ErrorKind::UnknownType; }
}  // namespace

Comparison compare_backends(const Statement& program) {
  Comparison c;
  for (Backend b : kBackends) c.outcomes[static_cast<int>(b)] = run_backend(b, program);
  const auto& o = c.outcomes;
  bool all_same = same_outcome(o[0], o[1]) && same_outcome(o[0], o[2]) && same_outcome(o[0], o[3]);
  if (all_same) {
    c.verdict = Verdict::Agree;
  } else if (unknown_type(o[2]) && unknown_type(o[3]) && same_outcome(o[0], o[1])) {
    c.verdict = Verdict::ExpectedAsymmetry;
  } else {
    c.verdict = Verdict::Diverge;
  }
  return c;
}

std::vector<StmtPtr> corpus(std::uint64_t seed, std::size_t count) {
  Generator gen(seed);
  std::vector<StmtPtr> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.program());
  return out;
}

Report run_check(std::uint64_t seed, std::size_t count) {
  Report r;
  r.seed = seed;
  r.count = count;
  auto programs = corpus(seed, count);
  for (std::size_t i = 0; i < count; ++i) {
    const StmtPtr& program = programs[i];
    Comparison c = compare_backends(*program);
    if (c.verdict == Verdict::Agree) ++r.agreed;
    if (c.verdict == Verdict::Agree && !c.outcomes[0].ok()) ++r.agreed_on_error;
    if (c.verdict == Verdict::ExpectedAsymmetry) ++r.asymmetries;
    if (c.verdict == Verdict::Diverge) {
      std::ostringstream details;
      for (Backend b : kBackends)
        details << "  " << backend_name(b) << ": " << describe(c.outcomes[static_cast<int>(b)])
                << "\n";
      r.divergences.push_back({i, format_xcom(*program), details.str()});
    }
    try {
      if (vm::verify_stack(vm::assemble(vm::compile_program(*program).code)).ok) ++r.stack_verified;
    } catch (const Error&) {
    }
    try {
      if (core::scan(*desugar2_program(*program)).typed_nodes == 0) ++r.erasure_clean;
    } catch (const Error&) {
    }
  }
  return r;
}

std::string format_report(const Report& r) {
  std::ostringstream out;
  out << "check seed=" << r.seed << " count=" << r.count << ": agreed=" << r.agreed << " (on error " << r.agreed_on_error << ")"
      << " asymmetries=" << r.asymmetries << " divergences=" << r.divergences.size()
      << " stack-verified=" << r.stack_verified << "/" << r.count
      << " erasure-clean=" << r.erasure_clean << "/" << r.count << "\n";
  if (!r.divergences.empty()) {
    const Divergence& d = r.divergences.front();
    out << "first divergence: program #" << d.index << "\n" << d.source << "\n" << d.details;
  }
  return out.str();
}

}  // namespace xcom::check
