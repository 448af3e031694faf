#include "xcom/flowgraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "xcom/format.hpp"

namespace xcom::flow {

namespace {
template <class T>
NodePtr mk(T node) {
  return std::make_shared<const FlowNode>(FlowNode{std::move(node)});
}
}  // namespace

NodePtr statement_node(std::string label) { return mk(StatementNode{std::move(label)}); }
NodePtr guard_node(std::string label) { return mk(GuardNode{std::move(label)}); }
NodePtr p_node(NodePtr first, NodePtr second) {
  return mk(PNode{std::move(first), std::move(second)});
}
NodePtr w_node(NodePtr test, NodePtr body) { return mk(WNode{std::move(test), std::move(body)}); }
NodePtr c_node(NodePtr test, NodePtr then_node, NodePtr else_node) {
  return mk(CNode{std::move(test), std::move(then_node), std::move(else_node)});
}

bool is_guard(const NodePtr& n) { return std::holds_alternative<GuardNode>(n->node); }

std::string label_of(const NodePtr& n) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StatementNode> || std::is_same_v<T, GuardNode>)
          return x.label;
        else if constexpr (std::is_same_v<T, PNode>)
          return "P(" + label_of(x.first) + "," + label_of(x.second) + ")";
        else if constexpr (std::is_same_v<T, WNode>)
          return "W(" + label_of(x.test) + "," + label_of(x.body) + ")";
        else
          return "C(" + label_of(x.test) + "," + label_of(x.then_node) + "," +
                 label_of(x.else_node) + ")";
      },
      n->node);
}

std::string_view edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Next: return "next";
    case EdgeKind::True: return "true";
    case EdgeKind::False: return "false";
  }
  return "?";
}

bool FlowGraph::contains(const NodePtr& n) const {
  return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
}

bool FlowGraph::contains(const FlowEdge& e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

void FlowGraph::add_node(NodePtr n) {
  if (!contains(n)) nodes.push_back(std::move(n));
}

void FlowGraph::add_edge(FlowEdge e) {
  if (!contains(e)) edges.push_back(std::move(e));
}

std::vector<FlowEdge> FlowGraph::out_edges(const NodePtr& n) const {
  std::vector<FlowEdge> out;
  for (const auto& e : edges)
    if (e.source == n) out.push_back(e);
  return out;
}

std::vector<FlowEdge> FlowGraph::in_edges(const NodePtr& n) const {
  std::vector<FlowEdge> in;
  for (const auto& e : edges)
    if (e.target == n) in.push_back(e);
  return in;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

struct Fragment {
  NodePtr entry;  // null for a statement list with no nodes
  std::vector<std::pair<NodePtr, EdgeKind>> exits;
};

class Builder {
 public:
  FlowGraph graph;

  Fragment build(const Statement& s) {
    return std::visit(
        [&](const auto& n) -> Fragment {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Block>) {
            Fragment acc;
            for (const auto& stmt : n.statements) acc = then(std::move(acc), build(*stmt));
            return acc;
          } else if constexpr (std::is_same_v<T, While>) {
            NodePtr guard = add(guard_node(format_exp(*n.test)));
            Fragment body = non_empty(build(*n.body));
            graph.add_edge({EdgeKind::True, guard, body.entry});
            link(body.exits, guard);
            return {guard, {{guard, EdgeKind::False}}};
          } else if constexpr (std::is_same_v<T, If>) {
            NodePtr guard = add(guard_node(format_exp(*n.test)));
            Fragment then_part = non_empty(build(*n.then_part));
            graph.add_edge({EdgeKind::True, guard, then_part.entry});
            Fragment out{guard, then_part.exits};
            if (n.else_part) {
              Fragment else_part = non_empty(build(*n.else_part));
              graph.add_edge({EdgeKind::False, guard, else_part.entry});
              out.exits.insert(out.exits.end(), else_part.exits.begin(), else_part.exits.end());
            } else {
              out.exits.emplace_back(guard, EdgeKind::False);
            }
            return out;
          } else {
            NodePtr node = add(statement_node(format_flat(s)));
            return {node, {{node, EdgeKind::Next}}};
          }
        },
        s.node);
  }

  NodePtr add(NodePtr n) {
    graph.add_node(n);
    return n;
  }

  void link(const std::vector<std::pair<NodePtr, EdgeKind>>& exits, const NodePtr& target) {
    for (const auto& [source, kind] : exits) graph.add_edge({kind, source, target});
  }

  Fragment then(Fragment a, Fragment b) {
    if (!a.entry) return b;
    if (!b.entry) return a;
    link(a.exits, b.entry);
    return {a.entry, std::move(b.exits)};
  }

  // Loop bodies and branches need a node to hang their edges on.
  Fragment non_empty(Fragment f) {
    if (f.entry) return f;
    NodePtr skip = add(statement_node("skip"));
    return {skip, {{skip, EdgeKind::Next}}};
  }
};

}  // namespace

FlowGraph from_program(const Statement& program) {
  Builder b;
  Fragment f = b.build(program);
  NodePtr exit = b.add(statement_node("skip"));
  b.link(f.exits, exit);
  return std::move(b.graph);
}

// ---------------------------------------------------------------------------
// Reduction

FlowGraph reduce_base(const FlowGraph& g, const NodePtr& n, const FlowGraph& h) {
  for (const auto& x : h.nodes)
    if (!g.contains(x)) throw std::invalid_argument("reduce: node not in graph: " + label_of(x));
  for (const auto& e : h.edges)
    if (!g.contains(e)) throw std::invalid_argument("reduce: edge not in graph");
  FlowGraph out;
  bool placed = false;
  for (const auto& x : g.nodes) {
    if (h.contains(x)) {
      if (!placed) out.add_node(n);
      placed = true;
    } else {
      out.add_node(x);
    }
  }
  if (!placed) out.add_node(n);
  for (const auto& e : g.edges) {
    if (h.contains(e)) continue;
    FlowEdge r = e;
    if (h.contains(r.source)) r.source = n;
    if (h.contains(r.target)) r.target = n;
    out.add_edge(std::move(r));
  }
  return out;
}

namespace {

// A node that behaves as a single statement: not a guard, exactly one edge in
// and one Next edge out.
bool linear(const FlowGraph& g, const NodePtr& n, FlowEdge* out) {
  if (is_guard(n)) return false;
  auto outs = g.out_edges(n);
  if (outs.size() != 1 || outs[0].kind != EdgeKind::Next || g.in_edges(n).size() != 1)
    return false;
  *out = outs[0];
  return true;
}

// The True and False edges of a guard with exactly those two outgoing edges.
bool branches(const FlowGraph& g, const NodePtr& test, FlowEdge* t, FlowEdge* f) {
  if (!is_guard(test)) return false;
  auto outs = g.out_edges(test);
  if (outs.size() != 2) return false;
  if (outs[0].kind == EdgeKind::False) std::swap(outs[0], outs[1]);
  if (outs[0].kind != EdgeKind::True || outs[1].kind != EdgeKind::False) return false;
  *t = outs[0];
  *f = outs[1];
  return true;
}

}  // namespace

FlowGraph reduce_p(const FlowGraph& g) {
  for (const auto& n1 : g.nodes) {
    if (is_guard(n1)) continue;
    auto outs = g.out_edges(n1);
    if (outs.size() != 1 || outs[0].kind != EdgeKind::Next) continue;
    const NodePtr& n2 = outs[0].target;
    if (n2 == n1 || is_guard(n2) || g.in_edges(n2).size() != 1) continue;
    return reduce_base(g, p_node(n1, n2), FlowGraph{{n1, n2}, {outs[0]}});
  }
  return g;
}

FlowGraph reduce_w(const FlowGraph& g) {
  for (const auto& test : g.nodes) {
    FlowEdge enter, exit, loop;
    if (!branches(g, test, &enter, &exit)) continue;
    const NodePtr& body = enter.target;
    const NodePtr& root = exit.target;
    if (body == test || root == test || root == body) continue;
    if (!linear(g, body, &loop) || loop.target != test) continue;
    NodePtr w = w_node(test, body);
    FlowGraph out = reduce_base(g, w, FlowGraph{{test, body}, {enter, loop, exit}});
    out.add_edge({EdgeKind::Next, w, root});
    return out;
  }
  return g;
}

FlowGraph reduce_c(const FlowGraph& g) {
  for (const auto& test : g.nodes) {
    FlowEdge true_edge, false_edge, end_then, end_else;
    if (!branches(g, test, &true_edge, &false_edge)) continue;
    const NodePtr& then_node = true_edge.target;
    const NodePtr& else_node = false_edge.target;
    if (then_node == else_node || then_node == test || else_node == test) continue;
    if (!linear(g, then_node, &end_then) || !linear(g, else_node, &end_else)) continue;
    const NodePtr& root = end_then.target;
    if (end_else.target != root || root == test || root == then_node || root == else_node)
      continue;
    NodePtr c = c_node(test, then_node, else_node);
    FlowGraph h{{test, then_node, else_node}, {true_edge, false_edge, end_then, end_else}};
    FlowGraph out = reduce_base(g, c, h);
    out.add_edge({EdgeKind::Next, c, root});
    return out;
  }
  return g;
}

FlowGraph reduce_fix(const FlowGraph& g, std::size_t* passes) {
  FlowGraph current = g;
  std::size_t count = 0;
  while (true) {
    ++count;
    FlowGraph next = reduce_c(reduce_w(reduce_p(current)));
    if (graph_equals(next, current)) {
      if (passes) *passes = count;
      return next;
    }
    current = std::move(next);
  }
}

bool graph_equals(const FlowGraph& a, const FlowGraph& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
  auto labels = [](const FlowGraph& g) {
    std::vector<std::string> out;
    for (const auto& n : g.nodes) out.push_back(label_of(n));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto edges = [](const FlowGraph& g) {
    std::vector<std::tuple<int, std::string, std::string>> out;
    for (const auto& e : g.edges)
      out.emplace_back(static_cast<int>(e.kind), label_of(e.source), label_of(e.target));
    std::sort(out.begin(), out.end());
    return out;
  };
  return labels(a) == labels(b) && edges(a) == edges(b);
}

namespace {
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string to_dot(const FlowGraph& g) {
  std::ostringstream out;
  out << "digraph flow {\n";
  auto id = [&](const NodePtr& n) {
    return std::find(g.nodes.begin(), g.nodes.end(), n) - g.nodes.begin();
  };
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const NodePtr& n = g.nodes[i];
    const char* shape = is_guard(n) ? "shape=diamond"
                        : std::holds_alternative<StatementNode>(n->node)
                            ? "shape=box"
                            : "shape=box, peripheries=2";
    out << "  n" << i << " [label=" << quoted(label_of(n)) << ", " << shape << "];\n";
  }
  for (const auto& e : g.edges)
    out << "  n" << id(e.source) << " -> n" << id(e.target) << " [label=\""
        << edge_kind_name(e.kind) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace xcom::flow
