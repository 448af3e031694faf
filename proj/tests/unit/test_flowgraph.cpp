#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "flow_oracle.hpp"
#include "xcom/check.hpp"
#include "xcom/flowgraph.hpp"

using namespace xcom;
using namespace xcom::flow;

namespace {
std::size_t count_kind(const FlowGraph& g, EdgeKind k) {
  return static_cast<std::size_t>(
      std::count_if(g.edges.begin(), g.edges.end(), [&](const FlowEdge& e) { return e.kind == k; }));
}

// The even-list figure, edge for edge as the paper defines them.
FlowGraph paper_figure() {
  auto n1 = statement_node("type Pair is head tail end");
  auto n2 = statement_node("type Nil is end");
  auto n3 = statement_node("value length is 100 end");
  auto n4 = statement_node("value list is new Nil end");
  auto n5 = guard_node("length > 0");
  auto n6 = guard_node("length mod 2 = 0");
  auto n7 = statement_node("value pair is new Pair end");
  auto n8 = statement_node("pair.head := length;");
  auto n9 = statement_node("pair.tail := list;");
  auto n10 = statement_node("list := pair;");
  auto n11 = statement_node("length := length - 1;");
  auto n12 = statement_node("skip");
  FlowGraph g;
  for (auto n : {n1, n2, n3, n4, n5, n6, n7, n8, n9, n10, n11, n12}) g.add_node(n);
  g.add_edge({EdgeKind::Next, n1, n2});
  g.add_edge({EdgeKind::Next, n2, n3});
  g.add_edge({EdgeKind::Next, n3, n4});
  g.add_edge({EdgeKind::Next, n4, n5});
  g.add_edge({EdgeKind::True, n5, n6});
  g.add_edge({EdgeKind::True, n6, n7});
  g.add_edge({EdgeKind::Next, n7, n8});
  g.add_edge({EdgeKind::Next, n8, n9});
  g.add_edge({EdgeKind::Next, n9, n10});
  g.add_edge({EdgeKind::Next, n10, n11});
  g.add_edge({EdgeKind::Next, n11, n5});
  g.add_edge({EdgeKind::False, n6, n11});
  g.add_edge({EdgeKind::False, n5, n12});
  return g;
}
}  // namespace

TEST_SUITE("flowgraph") {
  TEST_CASE("P reduction") {
    auto a = statement_node("a"), b = statement_node("b"), c = statement_node("c");
    FlowGraph g;
    g.add_node(a), g.add_node(b), g.add_node(c);
    g.add_edge({EdgeKind::Next, a, b});
    g.add_edge({EdgeKind::Next, b, c});
    auto r = reduce_p(g);
    REQUIRE(r.nodes.size() == 2);
    CHECK(label_of(r.nodes[0]) == "P(a,b)");
    REQUIRE(r.edges.size() == 1);
    CHECK(r.edges[0].source == r.nodes[0]);
    CHECK(r.edges[0].target == c);
  }

  TEST_CASE("W reduction") {
    auto t = guard_node("t"), b = statement_node("b"), x = statement_node("x");
    FlowGraph g;
    g.add_node(t), g.add_node(b), g.add_node(x);
    g.add_edge({EdgeKind::True, t, b});
    g.add_edge({EdgeKind::Next, b, t});
    g.add_edge({EdgeKind::False, t, x});
    auto r = reduce_w(g);
    REQUIRE(r.nodes.size() == 2);
    CHECK(label_of(r.nodes[0]) == "W(t,b)");
    REQUIRE(r.edges.size() == 1);
    CHECK(r.edges[0] == FlowEdge{EdgeKind::Next, r.nodes[0], x});
  }

  TEST_CASE("C reduction") {
    auto t = guard_node("t"), a = statement_node("a"), b = statement_node("b"), j = statement_node("j");
    FlowGraph g;
    for (auto n : {t, a, b, j}) g.add_node(n);
    g.add_edge({EdgeKind::True, t, a});
    g.add_edge({EdgeKind::False, t, b});
    g.add_edge({EdgeKind::Next, a, j});
    g.add_edge({EdgeKind::Next, b, j});
    auto r = reduce_c(g);
    REQUIRE(r.nodes.size() == 2);
    CHECK(label_of(r.nodes[0]) == "C(t,a,b)");
    REQUIRE(r.edges.size() == 1);
    CHECK(r.edges[0] == FlowEdge{EdgeKind::Next, r.nodes[0], j});
  }

  TEST_CASE("side conditions block reductions") {
    auto a = statement_node("a"), b = statement_node("b"), c = statement_node("c");
    FlowGraph g;
    g.add_node(a), g.add_node(b), g.add_node(c);
    g.add_edge({EdgeKind::Next, a, b});
    g.add_edge({EdgeKind::Next, c, b});
    CHECK(graph_equals(reduce_p(g), g));
    CHECK(reduce_p(g).nodes == g.nodes);
  }

  TEST_CASE("reduce_base") {
    auto a = statement_node("a"), b = statement_node("b");
    FlowGraph g;
    g.add_node(a);
    FlowGraph h;
    h.add_node(b);
    CHECK_THROWS_AS(reduce_base(g, statement_node("n"), h), std::invalid_argument);
  }

  TEST_CASE("node identity and label equality") {
    auto a1 = statement_node("a"), a2 = statement_node("a");
    CHECK(a1 != a2);
    FlowGraph g, h;
    g.add_node(a1);
    h.add_node(a2);
    CHECK(graph_equals(g, h));
    g.add_edge({EdgeKind::Next, a1, a1});
    g.add_edge({EdgeKind::Next, a1, a1});
    CHECK(g.edges.size() == 1);
  }

  TEST_CASE("even-list graph") {
    auto g = from_program(*parse_program(fixtures::read("even_list.xcom")));
    CHECK(g.nodes.size() == 12);
    CHECK(g.edges.size() == 13);
    CHECK(count_kind(g, EdgeKind::True) == 2);
    CHECK(count_kind(g, EdgeKind::False) == 2);
    CHECK(graph_equals(g, paper_figure()));
  }

  TEST_CASE("even-list reduction stops at the else-less if") {
    auto g = from_program(*parse_program(fixtures::read("even_list.xcom")));
    std::size_t passes = 0;
    auto r = reduce_fix(g, &passes);
    CHECK(passes <= g.nodes.size());
    CHECK(r.nodes.size() < g.nodes.size());
    CHECK(oracles::find_reducible(r).empty());
    CHECK(oracles::find_reducible(g) != "");
  }

  TEST_CASE("structured programs with else reduce to one node") {
    auto p = parse_program(
        "begin value x is 1 end while x > 0 do if x = 1 then x := 0; else x := 1; end end end");
    auto r = reduce_fix(from_program(*p));
    CHECK(r.nodes.size() == 1);
    CHECK(r.edges.empty());
    CHECK(label_of(r.nodes[0]) ==
          "P(P(value x is 1 end,W(x > 0,C(x = 1,x := 0;,x := 1;))),skip)");
  }

  TEST_CASE("empty bodies get skip nodes") {
    auto g = from_program(*parse_program("while false do begin end end"));
    CHECK(g.nodes.size() == 3);
    CHECK(g.edges.size() == 3);
  }

  TEST_CASE("corpus reductions reach a fixpoint") {
    for (const auto& p : check::corpus(7, 200)) {
      auto g = from_program(*p);
      std::size_t passes = 0;
      auto r = reduce_fix(g, &passes);
      CHECK(passes <= g.nodes.size());
      CHECK(oracles::find_reducible(r) == "");
    }
  }

  TEST_CASE("dot output") {
    auto g = from_program(*parse_program(fixtures::read("even_list.xcom")));
    auto dot = to_dot(g);
    CHECK(dot.rfind("digraph flow {\n", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 12 + 13 + 1);
    CHECK(dot.find("n4 [label=\"length > 0\", shape=diamond];") != std::string::npos);
    CHECK(dot.find("n4 -> n5 [label=\"true\"];") != std::string::npos);
  }
}
