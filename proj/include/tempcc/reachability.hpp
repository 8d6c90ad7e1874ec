#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempcc/assignment.hpp"
#include "tempcc/field.hpp"
#include "tempcc/temporal_network.hpp"
#include "tempcc/tog.hpp"

namespace tempcc {

/// A*_t: the (N+1)x(N+1) snapshot matrix with the controller in row/column 0.
/// Row 0 holds a single entry at column o+1; column 0 is empty. The padded
/// identity I* (zero at (0,0)) is implicit.
struct AugmentedSnapshot {
  struct Entry {
    std::size_t row;
    std::size_t col;
    std::uint64_t value;
  };

  std::size_t dim = 0;
  std::vector<Entry> entries;

  static AugmentedSnapshot build(const TemporalNetwork& net, NodeId controlled, TimeIndex t,
                                 const FieldAssignment& assignment) {
    AugmentedSnapshot s;
    s.dim = net.node_count() + 1;
    s.entries.push_back({0, std::size_t{controlled} + 1, assignment.interval(t)});
    for (const Arc& arc : net.snapshot_arcs(t)) {
      s.entries.push_back({std::size_t{arc.from} + 1, std::size_t{arc.to} + 1, assignment.weight(arc.param, t)});
    }
    return s;
  }

  /// row * (I* + A*_t)
  std::vector<std::uint64_t> right_multiply(const std::vector<std::uint64_t>& row, const PrimeField& field) const {
    std::vector<std::uint64_t> out(row);
    out[0] = 0;
    for (const auto& e : entries) {
      if (row[e.row] != 0) out[e.col] = field.add(out[e.col], field.mul(row[e.row], e.value));
    }
    return out;
  }

  std::vector<char> right_multiply_pattern(const std::vector<char>& row) const {
    std::vector<char> out(row);
    out[0] = 0;
    for (const auto& e : entries) out[e.col] |= row[e.row];
    return out;
  }
};

/// Controller row of Q_t = (I*+A*_t)(I*+A*_{t+1})...(I*+A*_T), evaluated in
/// GF(p) as a row-vector chain. Entry 0 is the controller itself (always 0);
/// entry i+1 belongs to node i.
inline std::vector<std::uint64_t> communicability_row(const TemporalNetwork& net, NodeId controlled, TimeIndex t,
                                                      const FieldAssignment& assignment) {
  net.require_node(controlled);
  net.require_time(t);
  assignment.require_compatible(net);
  std::vector<std::uint64_t> row(net.node_count() + 1, 0);
  row[0] = 1;
  for (TimeIndex s = t; s <= net.horizon(); ++s) {
    row = AugmentedSnapshot::build(net, controlled, s, assignment).right_multiply(row, assignment.field());
  }
  return row;
}

/// W* = [Q_1 row', ..., Q_T row'] with its structural zero pattern.
struct ReachabilityMatrix {
  FieldMatrix values;           // (N+1) x T
  std::vector<char> pattern;    // row-major, 1 = structurally nonzero

  bool structurally_nonzero(std::size_t row, std::size_t col) const { return pattern[row * values.cols() + col] != 0; }
};

inline ReachabilityMatrix assemble_w_star(const TemporalNetwork& net, NodeId controlled,
                                          const FieldAssignment& assignment) {
  net.require_node(controlled);
  assignment.require_compatible(net);
  const std::size_t dim = net.node_count() + 1;
  const TimeIndex horizon = net.horizon();
  ReachabilityMatrix out{FieldMatrix(dim, horizon), std::vector<char>(dim * horizon, 0)};

  std::vector<AugmentedSnapshot> snapshots;
  snapshots.reserve(horizon);
  for (TimeIndex s = 1; s <= horizon; ++s) snapshots.push_back(AugmentedSnapshot::build(net, controlled, s, assignment));

  for (TimeIndex t = 1; t <= horizon; ++t) {
    std::vector<std::uint64_t> row(dim, 0);
    std::vector<char> mask(dim, 0);
    row[0] = 1;
    mask[0] = 1;
    for (TimeIndex s = t; s <= horizon; ++s) {
      row = snapshots[s - 1].right_multiply(row, assignment.field());
      mask = snapshots[s - 1].right_multiply_pattern(mask);
    }
    out.values.set_column(t - 1, row);
    for (std::size_t r = 0; r < dim; ++r) out.pattern[r * horizon + (t - 1)] = mask[r];
  }
  return out;
}

/// Nodes j whose final copy j_{T+1} is reachable in the TOG from the source's
/// controller copy at `from_time` (0..T). Sorted ascending.
inline std::vector<NodeId> reachable_set(const TemporalNetwork& net, NodeId source, TimeIndex from_time) {
  net.require_node(source);
  if (from_time > net.horizon()) {
    throw std::out_of_range("from_time " + std::to_string(from_time) + " outside 0.." + std::to_string(net.horizon()));
  }
  const TimeOrderedGraph tog = build_tog(net, source);
  const SpanningTree tree = bfs_spanning_tree(tog, from_time);
  std::vector<NodeId> out;
  for (NodeId j = 0; j < net.node_count(); ++j) {
    if (tree.reached(tog.copy_vertex(j, net.horizon() + 1))) out.push_back(j);
  }
  return out;
}

/// CSV of the W* zero pattern: one line per row ("controller" then node labels).
inline void write_w_star_pattern(const ReachabilityMatrix& w, const TemporalNetwork& net, std::ostream& out) {
  out << "row";
  for (std::size_t t = 1; t <= w.values.cols(); ++t) out << ",t" << t;
  out << '\n';
  for (std::size_t r = 0; r < w.values.rows(); ++r) {
    out << (r == 0 ? std::string("controller") : net.label(static_cast<NodeId>(r - 1)));
    for (std::size_t c = 0; c < w.values.cols(); ++c) out << ',' << (w.structurally_nonzero(r, c) ? 1 : 0);
    out << '\n';
  }
}

}  // namespace tempcc
