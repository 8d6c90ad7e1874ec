#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempcc/temporal_network.hpp"

namespace tempcc {

enum class EdgeKind : std::uint8_t {
  kTimeFlow,     // i_t -> i_{t+1}, weight 1
  kInteraction,  // i_t -> j_{t+1}, weight = parameter of (i, j, t)
  kInjection,    // I^o_t -> o_{t+1}, weight 1
};

inline const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kTimeFlow: return "time_flow";
    case EdgeKind::kInteraction: return "interaction";
    case EdgeKind::kInjection: return "injection";
  }
  return "?";
}

inline constexpr ParamId kNoParam = std::numeric_limits<ParamId>::max();

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct TogEdge {
  Vertex from = 0;
  Vertex to = 0;
  EdgeKind kind = EdgeKind::kTimeFlow;
  ParamId param = kNoParam;
};

/// Time-ordered graph N(G, T): copies i_1..i_{T+1} of every node plus controller
/// copies I_0..I_T feeding the controlled node. Every edge goes from layer t to
/// layer t+1, so the graph is acyclic.
///
/// Vertex numbering: controller copy I_t is vertex t; copy i_L (L = 1..T+1) is
/// vertex (T+1) + (L-1)*N + i.
class TimeOrderedGraph {
 public:
  TimeOrderedGraph(const TemporalNetwork& net, NodeId controlled)
      : nodes_(net.node_count()), horizon_(net.horizon()), controlled_(controlled) {
    net.require_node(controlled);
    const std::size_t vertices = vertex_count();
    std::vector<std::vector<TogEdge>> out(vertices);
    for (TimeIndex t = 0; t <= horizon_; ++t) {
      out[controller_vertex(t)].push_back(
          {controller_vertex(t), copy_vertex(controlled_, t + 1), EdgeKind::kInjection, kNoParam});
    }
    for (TimeIndex t = 1; t <= horizon_; ++t) {
      for (NodeId i = 0; i < nodes_; ++i) {
        out[copy_vertex(i, t)].push_back({copy_vertex(i, t), copy_vertex(i, t + 1), EdgeKind::kTimeFlow, kNoParam});
      }
      // Arcs arrive sorted by (from, to): interaction edges end up in ascending neighbor order.
      for (const Arc& arc : net.snapshot_arcs(t)) {
        out[copy_vertex(arc.from, t)].push_back(
            {copy_vertex(arc.from, t), copy_vertex(arc.to, t + 1), EdgeKind::kInteraction, arc.param});
      }
    }
    offsets_.assign(vertices + 1, 0);
    for (std::size_t v = 0; v < vertices; ++v) offsets_[v + 1] = offsets_[v] + out[v].size();
    edges_.reserve(offsets_.back());
    for (auto& list : out) edges_.insert(edges_.end(), list.begin(), list.end());
  }

  std::size_t node_count() const { return nodes_; }
  TimeIndex horizon() const { return horizon_; }
  NodeId controlled_node() const { return controlled_; }

  std::size_t vertex_count() const { return (horizon_ + 1) + nodes_ * (horizon_ + 1); }

  Vertex controller_vertex(TimeIndex t) const {
    if (t > horizon_) throw std::out_of_range("controller copy index beyond horizon");
    return t;
  }
  Vertex copy_vertex(NodeId node, TimeIndex layer) const {
    return static_cast<Vertex>((horizon_ + 1) + (layer - 1) * nodes_ + node);
  }

  bool is_controller(Vertex v) const { return v <= horizon_; }
  /// Layer of a vertex; controller copy I_t sits at layer t.
  TimeIndex layer(Vertex v) const {
    return is_controller(v) ? v : static_cast<TimeIndex>((v - (horizon_ + 1)) / nodes_ + 1);
  }
  NodeId node_of(Vertex v) const {
    if (is_controller(v)) throw std::invalid_argument("controller copy has no network node");
    return static_cast<NodeId>((v - (horizon_ + 1)) % nodes_);
  }

  std::span<const TogEdge> edges() const { return edges_; }
  std::span<const TogEdge> out_edges(Vertex v) const {
    return std::span(edges_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }

  std::size_t count_edges(EdgeKind kind) const {
    std::size_t n = 0;
    for (const auto& e : edges_) n += e.kind == kind;
    return n;
  }

 private:
  std::size_t nodes_;
  TimeIndex horizon_;
  NodeId controlled_;
  std::vector<std::size_t> offsets_;
  std::vector<TogEdge> edges_;
};

inline TimeOrderedGraph build_tog(const TemporalNetwork& net, NodeId controlled) {
  return TimeOrderedGraph(net, controlled);
}

/// BFS spanning tree of the TOG. parent_edge[v] indexes tog.edges(); the root
/// and unreached vertices hold kNoEdge.
struct SpanningTree {
  static constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

  Vertex root = 0;
  std::vector<std::size_t> parent_edge;
  std::vector<Vertex> order;  // discovery order, root first

  bool reached(Vertex v) const { return v == root || parent_edge[v] != kNoEdge; }
};

/// BFS from controller copy I^o_t. Each layer is expanded in two passes: the
/// time-flow (and injection) edges of the whole frontier first, then the
/// interaction edges, frontier in discovery order and neighbors ascending.
/// A copy j_{s+1} therefore keeps j_s as parent whenever j_s is in the tree.
inline SpanningTree bfs_spanning_tree(const TimeOrderedGraph& tog, TimeIndex root_time) {
  SpanningTree tree;
  tree.root = tog.controller_vertex(root_time);
  tree.parent_edge.assign(tog.vertex_count(), SpanningTree::kNoEdge);
  std::vector<char> seen(tog.vertex_count(), 0);
  seen[tree.root] = 1;
  tree.order.push_back(tree.root);

  const TogEdge* base = tog.edges().data();
  std::vector<Vertex> frontier{tree.root};
  std::vector<Vertex> next;
  while (!frontier.empty()) {
    next.clear();
    for (int pass = 0; pass < 2; ++pass) {
      const bool want_interaction = pass == 1;
      for (Vertex v : frontier) {
        for (const TogEdge& e : tog.out_edges(v)) {
          if ((e.kind == EdgeKind::kInteraction) != want_interaction || seen[e.to]) continue;
          seen[e.to] = 1;
          tree.parent_edge[e.to] = static_cast<std::size_t>(&e - base);
          next.push_back(e.to);
        }
      }
    }
    tree.order.insert(tree.order.end(), next.begin(), next.end());
    frontier.swap(next);
  }
  return tree;
}

/// Edge-list dump: kind,from_layer,from_node,to_node,param ("-" when fixed weight 1).
inline void write_tog_edges(const TimeOrderedGraph& tog, const TemporalNetwork& net, std::ostream& out) {
  out << "kind,from_layer,from_node,to_node,param\n";
  for (const auto& e : tog.edges()) {
    out << to_string(e.kind) << ',' << tog.layer(e.from) << ','
        << (tog.is_controller(e.from) ? std::string("controller") : net.label(tog.node_of(e.from))) << ','
        << net.label(tog.node_of(e.to)) << ',';
    if (e.param == kNoParam) {
      out << '-';
    } else {
      out << e.param;
    }
    out << '\n';
  }
}

}  // namespace tempcc
