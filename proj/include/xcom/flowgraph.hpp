#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "xcom/syntax.hpp"

namespace xcom::flow {

struct FlowNode;
// Nodes have identity: two nodes with the same label are distinct.
using NodePtr = std::shared_ptr<const FlowNode>;

struct StatementNode {
  std::string label;
};
struct GuardNode {
  std::string label;
};
struct PNode {
  NodePtr first;
  NodePtr second;
};
struct WNode {
  NodePtr test;
  NodePtr body;
};
struct CNode {
  NodePtr test;
  NodePtr then_node;
  NodePtr else_node;
};

struct FlowNode {
  std::variant<StatementNode, GuardNode, PNode, WNode, CNode> node;
};

NodePtr statement_node(std::string label);
NodePtr guard_node(std::string label);
NodePtr p_node(NodePtr first, NodePtr second);
NodePtr w_node(NodePtr test, NodePtr body);
NodePtr c_node(NodePtr test, NodePtr then_node, NodePtr else_node);

bool is_guard(const NodePtr& n);
// Statement labels verbatim, guards verbatim, composites as P(a,b), W(t,b),
// C(t,a,b) over their parts' labels.
std::string label_of(const NodePtr& n);

enum class EdgeKind { Next, True, False };
std::string_view edge_kind_name(EdgeKind k);

struct FlowEdge {
  EdgeKind kind;
  NodePtr source;
  NodePtr target;

  bool operator==(const FlowEdge&) const = default;
};

// Node and edge sets kept in insertion order; edges are deduplicated.
struct FlowGraph {
  std::vector<NodePtr> nodes;
  std::vector<FlowEdge> edges;

  bool contains(const NodePtr& n) const;
  bool contains(const FlowEdge& e) const;
  void add_node(NodePtr n);
  void add_edge(FlowEdge e);
  std::vector<FlowEdge> out_edges(const NodePtr& n) const;
  std::vector<FlowEdge> in_edges(const NodePtr& n) const;
};

FlowGraph from_program(const Statement& program);

// Removes `h` from `g`, adds `n` where the first removed node stood, and
// re-links to `n` every surviving edge that touched a removed node. Throws
// std::invalid_argument unless h is a subgraph of g.
FlowGraph reduce_base(const FlowGraph& g, const NodePtr& n, const FlowGraph& h);

// One reduction each, on the first match in node insertion order; `g`
// unchanged when nothing matches.
FlowGraph reduce_p(const FlowGraph& g);
FlowGraph reduce_w(const FlowGraph& g);
FlowGraph reduce_c(const FlowGraph& g);

// Repeats P, W, C passes until a pass changes nothing. `passes`, when given,
// receives the number of passes run.
FlowGraph reduce_fix(const FlowGraph& g, std::size_t* passes = nullptr);

// Label-based equality: same node count, same label multiset and same
// multiset of (kind, source label, target label) edges.
bool graph_equals(const FlowGraph& a, const FlowGraph& b);

std::string to_dot(const FlowGraph& g);

}  // namespace xcom::flow
