// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "unit/flow_oracle.hpp"
#include "unit/oracles.hpp"
#include "xcom/check.hpp"
#include "xcom/flowgraph.hpp"
#include "xcom/format.hpp"
#include "xcom/interp.hpp"
#include "xcom/prettydoc.hpp"
#include "xcom/secd.hpp"
#include "xcom/translate.hpp"
#include "xcom/vm.hpp"

using namespace xcom;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(XCOM_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Cli {
  int status = -1;
  std::string output;  // stdout and stderr
};

Cli run_cli(const std::string& args) {
  Cli r;
  std::string cmd = std::string(XCOM_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// --- 1 ---------------------------------------------------------------------
Result pretty_goldens() {
  using namespace xcom::doc;
  Result r;
  auto eq = [&](const DocPtr& d, int w, int rib, const std::string& want, const char* name) {
    auto got = pprint(d, w, rib);
    r.expect(got == want, std::string(name) + ": got \"" + got + "\"");
  };
  eq(just("some text"), 80, 80, "some text", "Just");
  eq(order(just("some text"), order(just(" more text"), just(" the end."))), 80, 80,
     "some text more text the end.", "Order");
  eq(order(just("some text"), order(newline(), order(just("more text"), order(newline(), just("the end."))))),
     80, 80, "some text\nmore text\nthe end.", "Newline");
  eq(order(just("some text"),
           indent(2, order(newline(), order(just("then more text"), indent(2, order(newline(), just("the end."))))))),
     80, 80, "some text\n  then more text\n    the end.", "Indent");
  eq(order(just("some text"),
           order(block(order(newline(), just("more text"))), indent(2, order(newline(), just("the end."))))),
     80, 80, "some text\n         more text\n  the end.", "Block");
  std::vector<std::string> s{"some text", "more text", "end."};
  eq(alt(line_of(s), stack_of(s)), 80, 80, "some text more text end.", "Alt 80");
  eq(alt(line_of(s), stack_of(s)), 80, 10, "some text\nmore text\nend.", "Alt 10");
  return r;
}

// --- 2 ---------------------------------------------------------------------
std::string squeeze(std::string s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

Result machine_trace() {
  using namespace xcom::doc;
  Result r;
  const std::vector<std::string> figure{
      "Machine[80,50,0,0,0,[],Seq{Frame[0,code = Seq{some text; more text; the end.},cut = Seq{}]},Seq{}]",
      "Machine[80,50,0,0,0,[],Seq{Frame[0,code = Seq{some text, more text; the end.},cut = Seq{}]},Seq{}]",
      "Machine[80,50,9,9,9,[some text],Seq{Frame[0,code = Seq{ more text; the end.},cut = Seq{}]},Seq{}]",
      "Machine[80,50,9,9,9,[some text],Seq{Frame[0,code = Seq{ more text, the end.},cut = Seq{}]},Seq{}]",
      "Machine[80,50,19,19,19,[some text more text],Seq{Frame[0,code = Seq{ the end.},cut = Seq{}]},Seq{}]",
      "Machine[80,50,28,28,28,[some text more text the end.],Seq{Frame[0,code = Seq{},cut = Seq{}]},Seq{}]",
  };
  const std::vector<std::string> buffers{"", "", "some text", "some text", "some text more text",
                                         "some text more text the end."};
  Machine m(80, 50);
  m.load({order(just("some text"), order(just(" more text"), just(" the end.")))});
  for (std::size_t i = 0; i < figure.size(); ++i) {
    r.expect(squeeze(m.render()) == squeeze(figure[i]), "state " + std::to_string(i + 1) + ": " + m.render());
    r.expect(m.output() == buffers[i], "buffer at state " + std::to_string(i + 1));
    if (i + 1 < figure.size()) m.step();
  }
  r.expect(m.terminal(), "machine not terminal after six states");
  return r;
}

// --- 3 ---------------------------------------------------------------------
Result secd_traces() {
  using namespace xcom::secd;
  Result r;
  const std::vector<std::string> trace1{
      "([],[],[(\\v.v v) (\\x.x)],null)",
      "([],[],[(\\x.x),(\\v.v v),@],null)",
      "([<x,[],x>],[],[(\\v.v v),@],null)",
      "([<v,[],v v>,<x,[],x>],[],[@],null)",
      "  ([],[v-><x,[],x>],[v v],([],[],[],null))",
      "  ([],[v-><x,[],x>],[v,v,@],([],[],[],null))",
      "  ([<x,[],x>],[v-><x,[],x>],[v,@],([],[],[],null))",
      "  ([<x,[],x>,<x,[],x>],[v-><x,[],x>],[@],([],[],[],null))",
      "    ([],[x-><x,[],x>],[x],([],[v-><x,[],x>],[],([],[],[],null)))",
      "    ([<x,[],x>],[x-><x,[],x>],[],([],[v-><x,[],x>],[],([],[],[],null)))",
      "  ([<x,[],x>],[v-><x,[],x>],[],([],[],[],null))",
      "([<x,[],x>],[],[],null)",
  };
  auto render_all = [](const std::string& src) {
    auto e = parse_lambda(src);
    auto globals = builtins_for(*e);
    std::vector<std::string> out;
    for (const auto& st : trace(e, globals))
      out.push_back(std::string(2 * depth(st), ' ') + render_state(st, globals));
    return out;
  };
  auto t1 = render_all("(\\v.v v)(\\x.x)");
  r.expect(t1.size() == trace1.size(), "trace 1 has " + std::to_string(t1.size()) + " states");
  for (std::size_t i = 0; i < std::min(t1.size(), trace1.size()); ++i)
    r.expect(t1[i] == trace1[i], "trace 1 state " + std::to_string(i + 1) + ": " + t1[i]);
  auto t2 = render_all("(\\x.\\y.add [fst=x,snd=y]) 10 20");
  r.expect(!t2.empty() && t2.back() == "([30],E,[],null)", "trace 2 ends in " + (t2.empty() ? "" : t2.back()));
  return r;
}

// --- 4 ---------------------------------------------------------------------
Result even_list() {
  Result r;
  auto p = parse_program(read_fixture("even_list.xcom"));
  Observables want{{"length", "0"}, {"list", oracles::even_list_observable()}};
  r.expect(oracles::even_list_heads().size() == 50, "reference spine length");
  r.expect(observe_interp(*p) == want, "interpreter");
  r.expect(observe_core(desugar1_observed(*p), *p) == want, "desugar1");
  r.expect(observe_core(desugar2_observed(*p), *p) == want, "desugar2");
  r.expect(vm::observe_vm(*p) == want, "vm");
  return r;
}

// --- 5 ---------------------------------------------------------------------
Result differential() {
  Result r;
  auto report = check::run_check(7, 200);
  r.expect(report.divergences.empty(), check::format_report(report));
  r.expect(report.stack_verified == 200, "stack verifier: " + std::to_string(report.stack_verified) + "/200");
  auto cli = run_cli("check --seed 7 --count 200");
  r.expect(cli.status == 0 && cli.output.find("divergences=0") != std::string::npos, "cli: " + cli.output);
  return r;
}

// --- 6 ---------------------------------------------------------------------
Result static_asymmetry() {
  Result r;
  std::string file = std::string(XCOM_FIXTURE_DIR) + "/unknown_type.xcom";
  auto expect_cli = [&](const std::string& args, int status, const std::string& text) {
    auto c = run_cli(args + " " + file);
    r.expect(c.status == status && c.output.find(text) != std::string::npos,
             args + " -> exit " + std::to_string(c.status) + ": " + c.output);
  };
  expect_cli("desugar --mode static", 2, "Unknown type Missing");
  expect_cli("run", 1, "unbound type Missing");
  expect_cli("desugar --mode rt --eval", 1, "unbound variable Missing");
  expect_cli("exec", 2, "Unknown type Missing");
  return r;
}

// --- 7 ---------------------------------------------------------------------
Result flow_graphs() {
  using namespace xcom::flow;
  Result r;
  {
    auto a = statement_node("a"), b = statement_node("b");
    FlowGraph g;
    g.add_node(a), g.add_node(b);
    g.add_edge({EdgeKind::Next, a, b});
    auto p = reduce_p(g);
    r.expect(p.nodes.size() == 1 && label_of(p.nodes[0]) == "P(a,b)", "P");
  }
  {
    auto t = guard_node("t"), b = statement_node("b"), x = statement_node("x");
    FlowGraph g;
    g.add_node(t), g.add_node(b), g.add_node(x);
    g.add_edge({EdgeKind::True, t, b});
    g.add_edge({EdgeKind::Next, b, t});
    g.add_edge({EdgeKind::False, t, x});
    auto w = reduce_w(g);
    r.expect(w.nodes.size() == 2 && label_of(w.nodes[0]) == "W(t,b)" && w.edges.size() == 1 &&
                 w.edges[0].kind == EdgeKind::Next && w.edges[0].target == x,
             "W");
  }
  {
    auto t = guard_node("t"), a = statement_node("a"), b = statement_node("b"), j = statement_node("j");
    FlowGraph g;
    for (auto n : {t, a, b, j}) g.add_node(n);
    g.add_edge({EdgeKind::True, t, a});
    g.add_edge({EdgeKind::False, t, b});
    g.add_edge({EdgeKind::Next, a, j});
    g.add_edge({EdgeKind::Next, b, j});
    auto c = reduce_c(g);
    r.expect(c.nodes.size() == 2 && label_of(c.nodes[0]) == "C(t,a,b)", "C");
  }
  auto g = from_program(*parse_program(read_fixture("even_list.xcom")));
  // The figure defines 13 distinct edges (its edge set also names an
  // undefined "10").
  r.expect(g.nodes.size() == 12 && g.edges.size() == 13,
           "even list: " + std::to_string(g.nodes.size()) + " nodes, " + std::to_string(g.edges.size()) + " edges");
  auto corpus = check::corpus(7, 200);
  for (std::size_t i = 0; i < corpus.size() && r.ok; ++i) {
    auto h = from_program(*corpus[i]);
    std::size_t passes = 0;
    auto red = reduce_fix(h, &passes);
    r.expect(passes <= h.nodes.size(), "program " + std::to_string(i) + ": too many passes");
    auto left = oracles::find_reducible(red);
    r.expect(left.empty(), "program " + std::to_string(i) + ": reducible " + left);
  }
  return r;
}

// --- 8 ---------------------------------------------------------------------
Result formatter_round_trip() {
  Result r;
  auto programs = check::corpus(7, 200);
  programs.push_back(parse_program(read_fixture("even_list.xcom")));
  for (std::size_t i = 0; i < programs.size() && r.ok; ++i)
    for (auto [w, rib] : {std::pair{80, 40}, std::pair{40, 20}}) {
      auto text = format_xcom(*programs[i], w, rib);
      bool same = false;
      try {
        same = *parse_program(text) == *programs[i];
      } catch (const Error&) {
      }
      r.expect(same, "program " + std::to_string(i) + " at (" + std::to_string(w) + "," +
                         std::to_string(rib) + ")");
    }
  return r;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Result()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"pretty-printer golden suite", 1, pretty_goldens},
      {"machine trace of ordered text", 1, machine_trace},
      {"SECD traces", 1, secd_traces},
      {"even list on four backends", 1, even_list},
      {"differential check seed 7 count 200", 30, differential},
      {"static typing asymmetry", 1, static_asymmetry},
      {"flow-graph reductions", 5, flow_graphs},
      {"formatter round trip", 5, formatter_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.ok && secs > c.budget_seconds) {
      r.ok = false;
      r.detail = "took " + std::to_string(secs) + "s";
    }
    if (!r.ok) ++failed;
    std::printf("%s %zu %s (%.3fs)%s%s\n", r.ok ? "PASS" : "FAIL", i + 1, c.name, secs,
                r.ok ? "" : ": ", r.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
