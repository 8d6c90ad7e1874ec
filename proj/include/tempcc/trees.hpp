#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tempcc/assignment.hpp"
#include "tempcc/field.hpp"
#include "tempcc/temporal_network.hpp"
#include "tempcc/tog.hpp"

namespace tempcc {

/// Raised when a group handed to a rank formula does not satisfy the
/// hypotheses the formula is stated for.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TreeEdge {
  NodeId parent = 0;
  NodeId child = 0;
  ParamId param = 0;
};

/// Network-level projection of a TOG spanning tree rooted at I^o_t.
///
/// `nodes` lists the reached network nodes (o included); the controller is the
/// implicit root and is not listed. Each reached node other than o has one
/// incoming interaction edge, and its reachability entry is the product of the
/// parameters along its path.
class TemporalTree {
 public:
  TemporalTree() = default;

  /// Edges must be given parents-first: every parent is `controlled` or the
  /// child of an earlier edge.
  static TemporalTree from_edges(TimeIndex root_time, NodeId controlled, std::vector<TreeEdge> edges) {
    TemporalTree tree;
    tree.root_time_ = root_time;
    tree.controlled_ = controlled;
    tree.paths_.emplace(controlled, std::vector<ParamId>{});
    for (const auto& e : edges) {
      auto parent = tree.paths_.find(e.parent);
      if (parent == tree.paths_.end()) throw std::invalid_argument("tree edge parent not yet reached");
      if (tree.paths_.count(e.child)) throw std::invalid_argument("tree node reached twice");
      auto path = parent->second;
      path.push_back(e.param);
      tree.paths_.emplace(e.child, std::move(path));
      tree.pattern_.emplace_back(e.parent, e.child);
      tree.interactions_.push_back(e.param);
    }
    tree.edges_ = std::move(edges);
    for (const auto& [node, path] : tree.paths_) tree.nodes_.push_back(node);
    std::sort(tree.pattern_.begin(), tree.pattern_.end());
    std::sort(tree.interactions_.begin(), tree.interactions_.end());
    tree.interactions_.erase(std::unique(tree.interactions_.begin(), tree.interactions_.end()),
                             tree.interactions_.end());
    return tree;
  }

  TimeIndex root_time() const { return root_time_; }
  NodeId controlled() const { return controlled_; }
  /// Reached network nodes, ascending.
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  bool reaches(NodeId node) const { return paths_.count(node) != 0; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  /// Interaction parameters from the controller to `node`, in path order.
  const std::vector<ParamId>& path(NodeId node) const { return paths_.at(node); }
  /// Directed (parent, child) pairs, time ignored. Sorted.
  const std::vector<std::pair<NodeId, NodeId>>& pattern() const { return pattern_; }
  /// Timed interactions used by the tree. Sorted, unique.
  const std::vector<ParamId>& interactions() const { return interactions_; }

 private:
  TimeIndex root_time_ = 0;
  NodeId controlled_ = 0;
  std::vector<NodeId> nodes_;
  std::vector<TreeEdge> edges_;
  std::map<NodeId, std::vector<ParamId>> paths_;
  std::vector<std::pair<NodeId, NodeId>> pattern_;
  std::vector<ParamId> interactions_;
};

/// Projects a BFS spanning tree of the TOG onto network nodes.
inline TemporalTree project_tree(const TimeOrderedGraph& tog, const SpanningTree& tree) {
  std::vector<TreeEdge> edges;
  const auto all = tog.edges();
  for (Vertex v : tree.order) {
    const std::size_t pe = tree.parent_edge[v];
    if (pe == SpanningTree::kNoEdge) continue;
    const TogEdge& e = all[pe];
    if (e.kind != EdgeKind::kInteraction) continue;
    edges.push_back({tog.node_of(e.from), tog.node_of(e.to), e.param});
  }
  return TemporalTree::from_edges(tog.layer(tree.root), tog.controlled_node(), std::move(edges));
}

/// TT_1..TT_T, tree k rooted at I^o_k so that it spans the same snapshots
/// (k+1..T) as column k of W_c.
inline std::vector<TemporalTree> extract_trees(const TemporalNetwork& net, NodeId controlled) {
  const TimeOrderedGraph tog = build_tog(net, controlled);
  std::vector<TemporalTree> trees;
  trees.reserve(net.horizon());
  for (TimeIndex k = 1; k <= net.horizon(); ++k) trees.push_back(project_tree(tog, bfs_spanning_tree(tog, k)));
  return trees;
}

/// R_TT: entry 0 is the controller row (0); entry i+1 the path product to node i
/// times `root_scale`. `edge_weight(param)` gives each interaction's value.
template <typename WeightFn>
std::vector<std::uint64_t> reachability_vector(const TemporalTree& tree, std::size_t node_count,
                                               const PrimeField& field, WeightFn&& edge_weight,
                                               std::uint64_t root_scale = 1) {
  std::vector<std::uint64_t> r(node_count + 1, 0);
  for (NodeId node : tree.nodes()) {
    std::uint64_t v = root_scale;
    for (ParamId p : tree.path(node)) v = field.mul(v, edge_weight(p));
    r[std::size_t{node} + 1] = v;
  }
  return r;
}

/// W^R = [R_TT_1 ... R_TT_T] under a network assignment (intervals included).
inline FieldMatrix tree_reachability_matrix(std::span<const TemporalTree> trees, const TemporalNetwork& net,
                                            const FieldAssignment& assignment) {
  assignment.require_compatible(net);
  FieldMatrix w(net.node_count() + 1, trees.size());
  auto weight = [&](ParamId p) { return assignment.weight(p, net.param_time(p)); };
  for (std::size_t k = 0; k < trees.size(); ++k) {
    const std::uint64_t scale = assignment.interval(trees[k].root_time());
    w.set_column(k, reachability_vector(trees[k], net.node_count(), assignment.field(), weight, scale));
  }
  return w;
}

// --- taxonomy ---------------------------------------------------------------

/// Homogeneous subgroup; `shared` is I_{m,w}, the interactions common to all members.
struct HomSubgroup {
  std::vector<std::size_t> members;
  std::vector<ParamId> shared;
};

/// Trees with one structural pattern, split into interdependent subgroups
/// (connected components of "shares an interaction") and the independent rest.
struct HomGroup {
  std::vector<std::size_t> members;
  std::size_t node_count = 0;
  std::vector<HomSubgroup> interdependent;
  std::vector<std::size_t> independent;
};

/// Indices refer to the tree list that was classified (tree number = index + 1).
struct TreeTaxonomy {
  std::size_t tree_count = 0;
  std::vector<std::vector<std::size_t>> het_same_nodes;  // S_1..S_k
  std::vector<std::size_t> het_different_nodes;          // S_{k+1}
  std::vector<HomGroup> homogeneous;                     // m = 1..q

  std::size_t heterogeneous_count() const {
    std::size_t n = het_different_nodes.size();
    for (const auto& g : het_same_nodes) n += g.size();
    return n;
  }
  std::size_t homogeneous_count() const {
    std::size_t n = 0;
    for (const auto& g : homogeneous) n += g.members.size();
    return n;
  }
};

using TreeGroup = std::vector<const TemporalTree*>;

inline TreeGroup gather(std::span<const TemporalTree> trees, std::span<const std::size_t> members) {
  TreeGroup out;
  out.reserve(members.size());
  for (auto i : members) out.push_back(&trees[i]);
  return out;
}

namespace detail {

inline std::vector<ParamId> intersect_all(std::span<const TemporalTree* const> group) {
  if (group.empty()) return {};
  std::vector<ParamId> acc = group.front()->interactions();
  for (std::size_t i = 1; i < group.size(); ++i) {
    std::vector<ParamId> next;
    const auto& other = group[i]->interactions();
    std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(next));
    acc.swap(next);
  }
  return acc;
}

inline bool shares_interaction(const TemporalTree& a, const TemporalTree& b) {
  auto i = a.interactions().begin();
  auto j = b.interactions().begin();
  while (i != a.interactions().end() && j != b.interactions().end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace detail

inline TreeTaxonomy classify(std::span<const TemporalTree> trees) {
  TreeTaxonomy tax;
  tax.tree_count = trees.size();

  std::map<std::vector<std::pair<NodeId, NodeId>>, std::size_t> pattern_slot;
  std::vector<std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    auto [it, inserted] = pattern_slot.emplace(trees[i].pattern(), buckets.size());
    if (inserted) buckets.emplace_back();
    buckets[it->second].push_back(i);
  }

  std::vector<std::size_t> heterogeneous;
  for (const auto& bucket : buckets) {
    if (bucket.size() == 1) {
      heterogeneous.push_back(bucket.front());
      continue;
    }
    HomGroup group;
    group.members = bucket;
    group.node_count = trees[bucket.front()].node_count();
    // Union-find over "shares at least one timed interaction".
    std::vector<std::size_t> parent(bucket.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t a = 0; a < bucket.size(); ++a) {
      for (std::size_t b = a + 1; b < bucket.size(); ++b) {
        if (detail::shares_interaction(trees[bucket[a]], trees[bucket[b]])) parent[find(a)] = find(b);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> components;  // keyed by root, members in order
    std::vector<std::size_t> order;
    for (std::size_t a = 0; a < bucket.size(); ++a) {
      auto [it, inserted] = components.try_emplace(find(a));
      if (inserted) order.push_back(find(a));
      it->second.push_back(bucket[a]);
    }
    for (auto root : order) {
      const auto& comp = components[root];
      if (comp.size() == 1) {
        group.independent.push_back(comp.front());
      } else {
        const TreeGroup members = gather(trees, comp);
        group.interdependent.push_back({comp, detail::intersect_all(members)});
      }
    }
    tax.homogeneous.push_back(std::move(group));
  }
  std::sort(heterogeneous.begin(), heterogeneous.end());

  std::map<std::vector<NodeId>, std::size_t> node_slot;
  std::vector<std::vector<std::size_t>> by_nodes;
  for (auto i : heterogeneous) {
    auto [it, inserted] = node_slot.emplace(trees[i].nodes(), by_nodes.size());
    if (inserted) by_nodes.emplace_back();
    by_nodes[it->second].push_back(i);
  }
  for (auto& g : by_nodes) {
    if (g.size() >= 2) {
      tax.het_same_nodes.push_back(std::move(g));
    } else {
      tax.het_different_nodes.push_back(g.front());
    }
  }
  std::sort(tax.het_different_nodes.begin(), tax.het_different_nodes.end());
  return tax;
}

// --- group ranks ------------------------------------------------------------
// Node counts exclude the controller row, which is identically zero.

/// Heterogeneous trees over one node set: min(|V|, group size).
inline std::size_t rank_het_same_nodes(std::span<const TemporalTree* const> group) {
  if (group.empty()) throw std::invalid_argument("rank_het_same_nodes: empty group");
  const auto& nodes = group.front()->nodes();
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i]->nodes() != nodes) throw ContractViolation("same-nodes group with differing node sets");
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      if (group[i]->pattern() == group[j]->pattern()) {
        throw ContractViolation("heterogeneous group contains identical patterns");
      }
    }
  }
  return std::min(nodes.size(), group.size());
}

/// Heterogeneous trees with pairwise distinct node sets: one rank per tree.
inline std::size_t rank_het_diff_nodes(std::span<const TemporalTree* const> group) {
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      if (group[i]->nodes() == group[j]->nodes()) throw ContractViolation("different-nodes group repeats a node set");
    }
  }
  return group.size();
}

/// Homogeneous trees with pairwise disjoint interactions: min(|V|, size).
inline std::size_t rank_independent(std::span<const TemporalTree* const> subgroup, std::size_t group_node_count) {
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    for (std::size_t j = i + 1; j < subgroup.size(); ++j) {
      if (detail::shares_interaction(*subgroup[i], *subgroup[j])) {
        throw ContractViolation("independent subgroup members share an interaction");
      }
    }
  }
  return std::min(group_node_count, subgroup.size());
}

/// min(|V| - |I|, size), |I| the interactions common to all members.
inline std::size_t interdependent_value(std::size_t node_count, std::size_t shared, std::size_t size) {
  return std::min(node_count > shared ? node_count - shared : 0, size);
}

/// Interdependent trees sharing the interactions I: min(|V| - |I|, size).
inline std::size_t rank_interdependent(std::span<const TemporalTree* const> subgroup) {
  if (subgroup.size() < 2) throw ContractViolation("interdependent subgroup needs at least two trees");
  const auto shared = detail::intersect_all(subgroup);
  if (shared.empty()) throw ContractViolation("interdependent subgroup has no common interaction");
  return interdependent_value(subgroup.front()->node_count(), shared.size(), subgroup.size());
}

/// Combined rank of a homogeneous group:
/// min( min(sum_w r_w, max_w(|V| - |I_w|)) + r_indep, |V| ).
///
/// Components whose common-interaction set is empty (sharing is not
/// transitive) enter with |I| = 0.
inline std::size_t rank_homogeneous_group(const HomGroup& group, std::span<const TemporalTree> trees) {
  const std::size_t v = group.node_count;
  std::size_t sum = 0;
  std::size_t cap = 0;
  for (const auto& sub : group.interdependent) {
    sum += interdependent_value(v, sub.shared.size(), sub.members.size());
    cap = std::max(cap, v > sub.shared.size() ? v - sub.shared.size() : 0);
  }
  const std::size_t interdependent = std::min(sum, cap);
  const std::size_t independent = group.independent.empty() ? 0 : rank_independent(gather(trees, group.independent), v);
  return std::min(interdependent + independent, v);
}

struct GroupContribution {
  std::string family;  // "het_same", "het_diff" or "hom"
  std::size_t group_id = 0;
  std::size_t rank = 0;
};

struct BoundsReport {
  NodeId node = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t het_lower = 0;
  std::size_t het_upper = 0;
  std::size_t hom_lower = 0;
  std::size_t hom_upper = 0;
  std::vector<GroupContribution> groups;
};

/// Lower/upper bound on S^D from the heterogeneous groups: (max, sum).
inline std::pair<std::size_t, std::size_t> bounds_heterogeneous(const TreeTaxonomy& tax,
                                                                std::span<const TemporalTree> trees,
                                                                std::vector<GroupContribution>* groups = nullptr) {
  std::size_t lb = 0;
  std::size_t ub = 0;
  for (std::size_t l = 0; l < tax.het_same_nodes.size(); ++l) {
    const std::size_t r = rank_het_same_nodes(gather(trees, tax.het_same_nodes[l]));
    lb = std::max(lb, r);
    ub += r;
    if (groups) groups->push_back({"het_same", l + 1, r});
  }
  if (!tax.het_different_nodes.empty()) {
    const std::size_t r = rank_het_diff_nodes(gather(trees, tax.het_different_nodes));
    lb = std::max(lb, r);
    ub += r;
    if (groups) groups->push_back({"het_diff", tax.het_same_nodes.size() + 1, r});
  }
  return {lb, ub};
}

/// Sandwich bounds: lower = max(S^D lower, S^S lower), upper = min(S^D upper + S^S upper, N).
inline BoundsReport bounds_total(const TreeTaxonomy& tax, std::span<const TemporalTree> trees, std::size_t node_total) {
  BoundsReport report;
  if (!trees.empty()) report.node = trees.front().controlled();
  std::tie(report.het_lower, report.het_upper) = bounds_heterogeneous(tax, trees, &report.groups);
  for (std::size_t m = 0; m < tax.homogeneous.size(); ++m) {
    const std::size_t r = rank_homogeneous_group(tax.homogeneous[m], trees);
    report.hom_lower = std::max(report.hom_lower, r);
    report.hom_upper += r;
    report.groups.push_back({"hom", m + 1, r});
  }
  report.lower = std::max(report.het_lower, report.hom_lower);
  report.upper = std::min(report.het_upper + report.hom_upper, node_total);
  return report;
}

/// Trees, taxonomy and bounds for one controller.
inline BoundsReport controller_bounds(const TemporalNetwork& net, NodeId controlled) {
  const auto trees = extract_trees(net, controlled);
  auto report = bounds_total(classify(trees), trees, net.node_count());
  report.node = controlled;
  return report;
}

/// Audit CSV: tree_t,family,group_id,subgroup_id,V,I
inline void write_taxonomy(const TreeTaxonomy& tax, std::span<const TemporalTree> trees, std::ostream& out) {
  struct Row {
    std::size_t tree;
    std::string family;
    std::size_t group;
    std::size_t subgroup;
    std::size_t v;
    std::size_t i;
  };
  std::vector<Row> rows;
  for (std::size_t l = 0; l < tax.het_same_nodes.size(); ++l) {
    for (auto t : tax.het_same_nodes[l]) rows.push_back({t, "het_same", l + 1, 0, trees[t].node_count(), 0});
  }
  for (auto t : tax.het_different_nodes) {
    rows.push_back({t, "het_diff", tax.het_same_nodes.size() + 1, 0, trees[t].node_count(), 0});
  }
  for (std::size_t m = 0; m < tax.homogeneous.size(); ++m) {
    const auto& g = tax.homogeneous[m];
    for (std::size_t w = 0; w < g.interdependent.size(); ++w) {
      for (auto t : g.interdependent[w].members) {
        rows.push_back({t, "hom_interdependent", m + 1, w + 1, g.node_count, g.interdependent[w].shared.size()});
      }
    }
    for (auto t : g.independent) {
      rows.push_back({t, "hom_independent", m + 1, g.interdependent.size() + 1, g.node_count, 0});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.tree < b.tree; });
  out << "tree_t,family,group_id,subgroup_id,V,I\n";
  for (const auto& r : rows) {
    out << trees[r.tree].root_time() << ',' << r.family << ',' << r.group << ',';
    if (r.subgroup == 0) {
      out << '-';
    } else {
      out << r.subgroup;
    }
    out << ',' << r.v << ',' << r.i << '\n';
  }
}

}  // namespace tempcc
