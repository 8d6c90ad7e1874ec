#include <gtest/gtest.h>

#include <iostream>
#include <sstream>

#include "constructions.hpp"
#include "support.hpp"

using namespace tempcc;
using testing_support::load;

namespace {

struct Fig3 {
  TemporalNetwork net = load("fig3.tsv");
  NodeId a = net.node_id("A");
  NodeId b = net.node_id("B");
  NodeId c = net.node_id("C");
  NodeId d = net.node_id("D");
  std::vector<TemporalTree> trees = extract_trees(net, a);
};

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Trees, Fig3Shapes) {
  Fig3 f;
  SymbolTable sym(f.net);
  ASSERT_EQ(f.trees.size(), 4u);
  EXPECT_EQ(f.trees[0].nodes(), sorted({f.a, f.b, f.c, f.d}));
  EXPECT_EQ(f.trees[0].path(f.c), (std::vector<ParamId>{sym.at(f.a, f.b, 2), sym.at(f.b, f.c, 3)}));
  EXPECT_EQ(f.trees[0].path(f.d), (std::vector<ParamId>{sym.at(f.a, f.b, 2), sym.at(f.b, f.d, 3)}));
  EXPECT_EQ(f.trees[1].nodes(), sorted({f.a, f.c}));
  EXPECT_EQ(f.trees[1].pattern(), f.trees[2].pattern());
  EXPECT_EQ(f.trees[1].interactions(), (std::vector<ParamId>{sym.at(f.a, f.c, 4)}));
  EXPECT_EQ(f.trees[2].interactions(), f.trees[1].interactions());
  EXPECT_EQ(f.trees[3].nodes(), std::vector<NodeId>{f.a});
  EXPECT_TRUE(f.trees[3].edges().empty());
  for (TimeIndex k = 1; k <= 4; ++k) EXPECT_EQ(f.trees[k - 1].root_time(), k);
}

TEST(Trees, Fig3ReachabilityVectorOfFirstTree) {
  Fig3 f;
  const auto assignment = FieldAssignment::random(f.net, PrimeField(), 2);
  const auto w = tree_reachability_matrix(f.trees, f.net, assignment);
  SymbolTable sym(f.net);
  const auto& fld = assignment.field();
  const auto ab = assignment.value(sym.at(f.a, f.b, 2));
  // R_TT1 = [0, 1, a, ac, ad]
  EXPECT_EQ(w(0, 0), 0u);
  EXPECT_EQ(w(f.a + 1, 0), 1u);
  EXPECT_EQ(w(f.b + 1, 0), ab);
  EXPECT_EQ(w(f.c + 1, 0), fld.mul(ab, assignment.value(sym.at(f.b, f.c, 3))));
  EXPECT_EQ(w(f.d + 1, 0), fld.mul(ab, assignment.value(sym.at(f.b, f.d, 3))));
  EXPECT_EQ(generic_rank(w, fld), 3u);
}

TEST(Trees, NodeSetsShrinkOverRootTime) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    const auto net = testing_support::random_network(rng, 10, 8);
    const NodeId o = static_cast<NodeId>(rng() % net.node_count());
    const auto trees = extract_trees(net, o);
    for (std::size_t k = 0; k + 1 < trees.size(); ++k) {
      EXPECT_TRUE(std::includes(trees[k].nodes().begin(), trees[k].nodes().end(), trees[k + 1].nodes().begin(),
                                trees[k + 1].nodes().end()));
    }
    for (std::size_t k = 0; k < trees.size(); ++k) {
      EXPECT_TRUE(trees[k].reaches(o));
      EXPECT_EQ(trees[k].edges().size() + 1, trees[k].node_count());
      const auto reach = reachable_set(net, o, static_cast<TimeIndex>(k + 1));
      EXPECT_EQ(trees[k].nodes(), reach);
    }
  }
}

TEST(Trees, FromEdgesRejectsMalformedInput) {
  EXPECT_THROW(TemporalTree::from_edges(1, 0, {{1, 2, 0}}), std::invalid_argument);
  EXPECT_THROW(TemporalTree::from_edges(1, 0, {{0, 1, 0}, {0, 1, 1}}), std::invalid_argument);
}

TEST(Taxonomy, Fig3) {
  Fig3 f;
  const auto tax = classify(f.trees);
  EXPECT_TRUE(tax.het_same_nodes.empty());
  EXPECT_EQ(tax.het_different_nodes, (std::vector<std::size_t>{0, 3}));
  ASSERT_EQ(tax.homogeneous.size(), 1u);
  const auto& g = tax.homogeneous[0];
  EXPECT_EQ(g.node_count, 2u);
  ASSERT_EQ(g.interdependent.size(), 1u);
  EXPECT_EQ(g.interdependent[0].members, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(g.interdependent[0].shared.size(), 1u);
  EXPECT_TRUE(g.independent.empty());
  EXPECT_EQ(rank_homogeneous_group(g, f.trees), 1u);

  std::ostringstream out;
  write_taxonomy(tax, f.trees, out);
  EXPECT_EQ(out.str(),
            "tree_t,family,group_id,subgroup_id,V,I\n"
            "1,het_diff,1,-,4,0\n"
            "2,hom_interdependent,1,1,2,1\n"
            "3,hom_interdependent,1,1,2,1\n"
            "4,het_diff,1,-,1,0\n");
}

TEST(Taxonomy, EveryTreeInExactlyOneLeaf) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const auto net = testing_support::random_network(rng, 10, 8);
    const NodeId o = static_cast<NodeId>(rng() % net.node_count());
    const auto trees = extract_trees(net, o);
    const auto tax = classify(trees);
    std::vector<int> hits(trees.size(), 0);
    for (const auto& g : tax.het_same_nodes) {
      for (auto t : g) ++hits[t];
    }
    for (auto t : tax.het_different_nodes) ++hits[t];
    for (const auto& g : tax.homogeneous) {
      for (const auto& s : g.interdependent) {
        for (auto t : s.members) ++hits[t];
      }
      for (auto t : g.independent) ++hits[t];
    }
    for (auto h : hits) EXPECT_EQ(h, 1);
    EXPECT_EQ(tax.heterogeneous_count() + tax.homogeneous_count(), trees.size());
  }
}

TEST(GroupRanks, ClosedFormExamples) {
  std::mt19937_64 rng(1);
  // Three nested node sets.
  std::vector<TemporalTree> nested{
      TemporalTree::from_edges(1, 0, {{0, 1, 0}, {1, 2, 1}}),
      TemporalTree::from_edges(2, 0, {{0, 1, 2}}),
      TemporalTree::from_edges(3, 0, {}),
  };
  TreeGroup ptrs;
  for (const auto& t : nested) ptrs.push_back(&t);
  EXPECT_EQ(rank_het_diff_nodes(ptrs), 3u);
  EXPECT_EQ(constructions::field_rank(nested, rng), 3u);
  EXPECT_EQ(rank_het_diff_nodes(TreeGroup{ptrs[0]}), 1u);
  EXPECT_THROW(rank_het_diff_nodes(TreeGroup{ptrs[1], ptrs[1]}), ContractViolation);

  // Same nodes, distinct shapes.
  std::vector<TemporalTree> same{
      TemporalTree::from_edges(1, 0, {{0, 1, 0}, {0, 2, 1}}),
      TemporalTree::from_edges(2, 0, {{0, 1, 2}, {1, 2, 3}}),
  };
  EXPECT_EQ(rank_het_same_nodes(TreeGroup{&same[0], &same[1]}), 2u);
  EXPECT_THROW(rank_het_same_nodes(TreeGroup{&same[0], &same[0]}), ContractViolation);
  EXPECT_THROW(rank_het_same_nodes(TreeGroup{&same[0], &nested[1]}), ContractViolation);
  EXPECT_THROW(rank_het_same_nodes(TreeGroup{}), std::invalid_argument);

  EXPECT_EQ(interdependent_value(5, 3, 2), 2u);  // four-node star below a hub, three shared leaves
  EXPECT_EQ(interdependent_value(5, 2, 2), 2u);  // tree count binds
  EXPECT_EQ(interdependent_value(5, 3, 6), 2u);
}

namespace {

// Hub pattern of the worked examples: o -> x, x -> {p, q, r}.
TemporalTree hub(TimeIndex t, ParamId a, ParamId b, ParamId c, ParamId d) {
  return TemporalTree::from_edges(t, 0, {{0, 1, a}, {1, 2, b}, {1, 3, c}, {1, 4, d}});
}

}  // namespace

TEST(GroupRanks, IndependentHubTrees) {
  std::mt19937_64 rng(2);
  std::vector<TemporalTree> two{hub(1, 0, 1, 2, 3), hub(2, 4, 5, 6, 7)};
  EXPECT_EQ(rank_independent(TreeGroup{&two[0], &two[1]}, 5), 2u);
  EXPECT_EQ(constructions::field_rank(two, rng), 2u);
  std::vector<TemporalTree> many;
  for (ParamId i = 0; i < 7; ++i) many.push_back(hub(i + 1, 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3));
  TreeGroup ptrs;
  for (const auto& t : many) ptrs.push_back(&t);
  EXPECT_EQ(rank_independent(ptrs, 5), 5u);
  EXPECT_EQ(constructions::field_rank(many, rng), 5u);
  EXPECT_THROW(rank_independent(TreeGroup{&two[0], &two[0]}, 5), ContractViolation);
}

TEST(GroupRanks, InterdependentHubTrees) {
  std::mt19937_64 rng(3);
  // Shared b, c, d; own a.
  std::vector<TemporalTree> shared_leaves{hub(1, 10, 1, 2, 3), hub(2, 11, 1, 2, 3)};
  EXPECT_EQ(rank_interdependent(TreeGroup{&shared_leaves[0], &shared_leaves[1]}), 2u);
  EXPECT_EQ(constructions::field_rank(shared_leaves, rng), 2u);
  std::vector<TemporalTree> six;
  for (ParamId i = 0; i < 6; ++i) six.push_back(hub(i + 1, 10 + i, 1, 2, 3));
  TreeGroup ptrs;
  for (const auto& t : six) ptrs.push_back(&t);
  EXPECT_EQ(rank_interdependent(ptrs), 2u);
  EXPECT_EQ(constructions::field_rank(six, rng), 2u);

  std::vector<TemporalTree> disjoint{hub(1, 0, 1, 2, 3), hub(2, 4, 5, 6, 7)};
  EXPECT_THROW(rank_interdependent(TreeGroup{&disjoint[0], &disjoint[1]}), ContractViolation);
  EXPECT_THROW(rank_interdependent(TreeGroup{&disjoint[0]}), ContractViolation);
}

TEST(GroupRanks, HomogeneousGroupOfTwoSubgroups) {
  std::mt19937_64 rng(4);
  // Subgroup 1 shares {b, c, d}; subgroup 2 shares {a', b'} and nothing with subgroup 1.
  std::vector<TemporalTree> trees{hub(1, 10, 1, 2, 3), hub(2, 11, 1, 2, 3), hub(3, 20, 21, 22, 23),
                                  hub(4, 20, 21, 24, 25)};
  HomGroup group;
  group.members = {0, 1, 2, 3};
  group.node_count = 5;
  group.interdependent = {{{0, 1}, {1, 2, 3}}, {{2, 3}, {20, 21}}};
  EXPECT_EQ(rank_homogeneous_group(group, trees), 3u);  // min(min(2 + 2, max(2, 3)) + 0, 5)

  const auto tax = classify(trees);
  ASSERT_EQ(tax.homogeneous.size(), 1u);
  EXPECT_EQ(tax.homogeneous[0].interdependent.size(), 2u);
  EXPECT_EQ(rank_homogeneous_group(tax.homogeneous[0], trees), 3u);
  RecordProperty("field_rank", static_cast<int>(constructions::field_rank(trees, rng)));

  HomGroup only_independent;
  only_independent.members = {0, 2};
  only_independent.node_count = 5;
  only_independent.independent = {0, 2};
  EXPECT_EQ(rank_homogeneous_group(only_independent, trees), 2u);
}

TEST(GroupRanks, SharedBaseAcrossSubgroupsMatchesFieldRank) {
  // Second pair reuses the first pair's hub parameters with its own leaves, as
  // in the worked two-subgroup example: rank 3 < 2 + 2.
  std::mt19937_64 rng(5);
  std::vector<TemporalTree> trees{hub(1, 10, 1, 2, 3), hub(2, 11, 1, 2, 3), hub(3, 10, 1, 2, 30),
                                  hub(4, 11, 1, 2, 31)};
  EXPECT_EQ(constructions::field_rank(trees, rng), 3u);
  const auto tax = classify(trees);
  ASSERT_EQ(tax.homogeneous.size(), 1u);
  EXPECT_EQ(rank_homogeneous_group(tax.homogeneous[0], trees), 3u);
}

TEST(GroupRanks, ConstructedFamiliesMatchClosedForms) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    auto diff = constructions::different_nodes_family(rng);
    TreeGroup dp;
    for (const auto& t : diff.trees) dp.push_back(&t);
    EXPECT_EQ(rank_het_diff_nodes(dp), diff.closed_form);
    EXPECT_EQ(constructions::field_rank(diff.trees, rng), diff.closed_form) << diff.description;

    auto ind = constructions::independent_family(rng);
    TreeGroup ip;
    for (const auto& t : ind.trees) ip.push_back(&t);
    EXPECT_EQ(rank_independent(ip, ind.trees.front().node_count()), ind.closed_form);
    EXPECT_EQ(constructions::field_rank(ind.trees, rng), ind.closed_form) << ind.description;

    auto dep = constructions::interdependent_family(rng);
    TreeGroup pp;
    for (const auto& t : dep.trees) pp.push_back(&t);
    EXPECT_EQ(rank_interdependent(pp), dep.closed_form);
    EXPECT_EQ(constructions::field_rank(dep.trees, rng), dep.closed_form) << dep.description;
  }
}

TEST(GroupRanks, RandomHomogeneousGroupsAgainstFieldRank) {
  // Closed-form group value vs field rank on random groups; disagreements are
  // reported, while the always-valid sandwich is asserted.
  std::mt19937_64 rng(29);
  int disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 5;
    const auto shape = constructions::random_shape(constructions::shuffled_nodes(n, rng), rng);
    constructions::ParamPool pool;
    std::vector<TemporalTree> trees;
    const std::size_t subgroups = 1 + rng() % 4;
    for (std::size_t s = 0; s < subgroups; ++s) {
      const bool independent = rng() % 3 == 0;
      const std::size_t members = independent ? 1 : 2 + rng() % 2;
      std::vector<ParamId> base;
      for (std::size_t e = 0; e < shape.size(); ++e) base.push_back(pool.fresh());
      std::vector<char> shared(shape.size(), 0);
      shared[rng() % shape.size()] = 1;
      for (std::size_t e = 0; e < shape.size(); ++e) shared[e] |= rng() % 2;
      for (std::size_t m = 0; m < members; ++m) {
        std::vector<ParamId> params;
        for (std::size_t e = 0; e < shape.size(); ++e) params.push_back(shared[e] && !independent ? base[e] : pool.fresh());
        trees.push_back(constructions::make_tree(static_cast<TimeIndex>(trees.size() + 1), shape, params));
      }
    }
    if (trees.size() < 2) continue;  // a lone tree is heterogeneous
    const auto tax = classify(trees);
    ASSERT_EQ(tax.homogeneous.size(), 1u);
    const std::size_t formula = rank_homogeneous_group(tax.homogeneous[0], trees);
    const std::size_t field = constructions::field_rank(trees, rng);
    if (formula != field) {
      ++disagreements;
      std::cout << "[group " << i << "] |V|=" << n << " trees=" << trees.size() << " formula=" << formula
                << " field=" << field << '\n';
    }
    EXPECT_LE(field, n);
    EXPECT_GE(field, 1u);
  }
  RecordProperty("formula_disagreements", disagreements);
  std::cout << "homogeneous-group formula disagreements: " << disagreements << "/200\n";
}

TEST(Bounds, Fig3) {
  Fig3 f;
  const auto report = controller_bounds(f.net, f.a);
  EXPECT_EQ(report.lower, 2u);
  EXPECT_EQ(report.upper, 3u);
  EXPECT_EQ(report.het_lower, 2u);
  EXPECT_EQ(report.het_upper, 2u);
  EXPECT_EQ(report.hom_lower, 1u);
  EXPECT_EQ(report.hom_upper, 1u);
  const auto s = controlling_centrality(f.net, f.a).centrality;
  EXPECT_LE(report.lower, s);
  EXPECT_LE(s, report.upper);
}

TEST(Bounds, NoContactNetwork) {
  const TemporalNetwork net({"a", "b", "c"}, 5, {});
  const auto report = controller_bounds(net, 1);
  EXPECT_EQ(report.lower, 1u);
  EXPECT_EQ(report.upper, 1u);
}

TEST(Bounds, EmptyHeterogeneousFamily) {
  TreeTaxonomy tax;
  EXPECT_EQ(bounds_heterogeneous(tax, {}), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(Bounds, SandwichOnSmallSyntheticSuite) {
  // N = 10, p = 0.05, T = 20, seeds 1..20: every node inside its bounds.
  std::size_t violations = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto net = generate({10, 0.05, 20, seed});
    for (const auto& row : analyze_all(net)) {
      EXPECT_LE(row.lower, row.upper);
      EXPECT_LE(row.upper, net.node_count());
      if (!row.sandwiched()) {
        ++violations;
        ADD_FAILURE() << "seed " << seed << " node " << row.node << ": " << row.lower << " <= " << row.centrality
                      << " <= " << row.upper;
      }
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST(PartitionSandwich, AnyTwoBlockSplitOfTreeColumns) {
  std::mt19937_64 rng(41);
  const PrimeField f;
  for (int i = 0; i < 100; ++i) {
    const auto net = testing_support::random_network(rng, 10, 8);
    const NodeId o = static_cast<NodeId>(rng() % net.node_count());
    const auto a = FieldAssignment::random(net, f, rng());
    const auto w = tree_reachability_matrix(extract_trees(net, o), net, a);
    const auto total = generic_rank(w, f);
    for (int split = 0; split < 10; ++split) {
      std::vector<std::size_t> left, right;
      for (std::size_t c = 0; c < w.cols(); ++c) (rng() % 2 ? left : right).push_back(c);
      const auto rl = generic_rank(w.select_columns(left), f);
      const auto rr = generic_rank(w.select_columns(right), f);
      EXPECT_LE(std::max(rl, rr), total);
      EXPECT_LE(total, rl + rr);
    }
  }
}
