// xcom: command-line driver for the XCom toolkit.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "xcom/check.hpp"
#include "xcom/core.hpp"
#include "xcom/flowgraph.hpp"
#include "xcom/format.hpp"
#include "xcom/interp.hpp"
#include "xcom/secd.hpp"
#include "xcom/syntax.hpp"
#include "xcom/translate.hpp"
#include "xcom/vm.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kStatic = 2;
constexpr int kMismatch = 3;
constexpr int kUsage = 64;

// Errors raised before anything runs (parsing, translation, compilation).
struct StaticError {
  xcom::Error error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

xcom::StmtPtr load(const std::string& path) {
  try {
    return xcom::parse_program(read_input(path));
  } catch (const xcom::Error& e) {
    throw StaticError{e};
  }
}

template <class F>
auto statically(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const xcom::Error& e) {
    throw StaticError{e};
  }
}

void print_observables(const xcom::Observables& obs) {
  for (const auto& [name, value] : obs) std::cout << name << " = " << value << "\n";
}

struct Options {
  std::string input = "-";
  bool json = false;
  int page = 80;
  int ribbon = 80;
  std::string mode = "rt";
  bool eval = false;
  int width = 80;
  bool resolved = false;
  bool reduce = false;
  bool dot = false;
  bool trace = false;
  bool dump = false;
  std::uint64_t seed = 7;
  std::size_t count = 200;
  std::size_t max_steps = xcom::secd::kDefaultStepCap;
};

int cmd_parse(const Options& o) {
  auto program = load(o.input);
  std::cout << (o.json ? xcom::ast_json(*program) + "\n" : xcom::dump_ast(*program));
  return kOk;
}

int cmd_fmt(const Options& o) {
  auto program = load(o.input);
  std::cout << xcom::format_xcom(*program, o.page, o.ribbon) << "\n";
  return kOk;
}

int cmd_run(const Options& o) {
  auto program = load(o.input);
  print_observables(xcom::observe_interp(*program));
  return kOk;
}

int cmd_desugar(const Options& o) {
  auto program = load(o.input);
  bool rt = o.mode == "rt";
  if (o.eval) {
    auto observed = statically([&] {
      return rt ? xcom::desugar1_observed(*program) : xcom::desugar2_observed(*program);
    });
    print_observables(xcom::observe_core(observed, *program));
    return kOk;
  }
  auto core = statically([&] {
    return rt ? xcom::desugar1_program(*program) : xcom::desugar2_program(*program);
  });
  std::cout << xcom::core::render_pretty(*core, o.width) << "\n";
  return kOk;
}

int cmd_compile(const Options& o) {
  auto program = load(o.input);
  auto compiled = statically([&] { return xcom::vm::compile_program(*program); });
  if (o.resolved)
    std::cout << xcom::vm::resolved_listing(statically([&] { return xcom::vm::assemble(compiled.code); }));
  else
    std::cout << xcom::vm::listing(compiled.code);
  return kOk;
}

int cmd_exec(const Options& o) {
  auto program = load(o.input);
  auto compiled = statically([&] { return xcom::vm::compile_program(*program); });
  auto code = statically([&] { return xcom::vm::assemble(compiled.code); });
  if (o.resolved) std::cout << xcom::vm::resolved_listing(code);
  auto state = xcom::vm::exec_vm(code, compiled.local_count);
  for (std::size_t i = 0; i < state.locals.size(); ++i)
    std::cout << i << " " << compiled.slot_names[i] << " = "
              << xcom::core::print_value(state.locals[i]) << "\n";
  return kOk;
}

int cmd_cfg(const Options& o) {
  auto program = load(o.input);
  auto graph = xcom::flow::from_program(*program);
  if (o.reduce) graph = xcom::flow::reduce_fix(graph);
  if (o.dot) {
    std::cout << xcom::flow::to_dot(graph);
  } else {
    std::cout << "nodes " << graph.nodes.size() << "\nedges " << graph.edges.size() << "\n";
    if (o.reduce)
      for (const auto& n : graph.nodes) std::cout << "node " << xcom::flow::label_of(n) << "\n";
  }
  return kOk;
}

int cmd_secd(const Options& o) {
  std::string text = o.input == "-" ? read_input("-") : o.input;
  auto exp = statically([&] { return xcom::secd::parse_lambda(text); });
  auto globals = xcom::secd::builtins_for(*exp);
  if (o.trace) {
    for (const auto& st : xcom::secd::trace(exp, globals, o.max_steps))
      std::cout << std::string(2 * xcom::secd::depth(st), ' ')
                << xcom::secd::render_state(st, globals) << "\n";
  } else {
    std::cout << xcom::secd::render_value(xcom::secd::run(exp, globals, o.max_steps), globals)
              << "\n";
  }
  return kOk;
}

int cmd_check(const Options& o) {
  if (o.dump) {
    for (const auto& program : xcom::check::corpus(o.seed, o.count))
      std::cout << xcom::format_xcom(*program) << "\n\n";
    return kOk;
  }
  auto report = xcom::check::run_check(o.seed, o.count);
  std::cout << xcom::check::format_report(report);
  return report.clean() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XCom toolkit: interpreter, translators, VM, pretty printer, flow graphs, SECD"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  auto input = [&](CLI::App* sub, const char* what = "XCom source file, or - for stdin") {
    sub->add_option("input", o.input, what)->required();
  };

  auto* parse = app.add_subcommand("parse", "Print the abstract syntax tree");
  input(parse);
  parse->add_flag("--json", o.json, "Emit JSON");
  parse->callback([&] { handler = cmd_parse; });

  auto* fmt = app.add_subcommand("fmt", "Pretty-print a program");
  input(fmt);
  fmt->add_option("--page", o.page, "Page width")->check(CLI::PositiveNumber);
  fmt->add_option("--ribbon", o.ribbon, "Ribbon width")->check(CLI::PositiveNumber);
  fmt->callback([&] { handler = cmd_fmt; });

  auto* run = app.add_subcommand("run", "Interpret and print the top-level values");
  input(run);
  run->callback([&] { handler = cmd_run; });

  auto* desugar = app.add_subcommand("desugar", "Translate to the core language");
  input(desugar);
  desugar->add_option("--mode", o.mode, "rt (run-time types) or static (a-lists)")
      ->check(CLI::IsMember({"rt", "static"}));
  desugar->add_flag("--eval", o.eval, "Evaluate the translation and print the top-level values");
  desugar->add_option("--width", o.width, "Layout width")->check(CLI::PositiveNumber);
  desugar->callback([&] { handler = cmd_desugar; });

  auto* compile = app.add_subcommand("compile", "Print the VM instruction listing");
  input(compile);
  compile->add_flag("--dump-resolved", o.resolved, "Print the assembled program");
  compile->callback([&] { handler = cmd_compile; });

  auto* exec = app.add_subcommand("exec", "Compile, run on the VM and print the locals");
  input(exec);
  exec->add_flag("--dump-resolved", o.resolved, "Print the assembled program first");
  exec->callback([&] { handler = cmd_exec; });

  auto* cfg = app.add_subcommand("cfg", "Build the flow graph");
  input(cfg);
  cfg->add_flag("--reduce", o.reduce, "Apply P/W/C reductions to a fixpoint");
  cfg->add_flag("--dot", o.dot, "Print Graphviz DOT");
  cfg->callback([&] { handler = cmd_cfg; });

  auto* secd = app.add_subcommand("secd", "Evaluate a lambda expression on the SECD machine");
  input(secd, "Lambda expression, or - for stdin");
  secd->add_flag("--trace", o.trace, "Print every machine state");
  secd->add_option("--max-steps", o.max_steps, "Step cap")->check(CLI::PositiveNumber);
  secd->callback([&] { handler = cmd_secd; });

  auto* check = app.add_subcommand("check", "Differential test of the four backends");
  check->add_option("--seed", o.seed, "Generator seed");
  check->add_option("--count", o.count, "Number of programs")->check(CLI::PositiveNumber);
  check->add_flag("--dump", o.dump, "Print the generated programs instead of testing them");
  check->callback([&] { handler = cmd_check; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return handler(o);
  } catch (const StaticError& e) {
    std::cerr << "xcom: " << e.error.what() << "\n";
    return kStatic;
  } catch (const xcom::Error& e) {
    std::cerr << "xcom: " << e.what() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "xcom: " << e.what() << "\n";
    return kRuntime;
  }
}
