#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tempcc/assignment.hpp"
#include "tempcc/field.hpp"
#include "tempcc/temporal_network.hpp"

namespace tempcc {

namespace detail {

// x <- G_s x = (I + T_s A_s') x, in place.
inline void apply_step(const TemporalNetwork& net, TimeIndex s, const FieldAssignment& assignment,
                       std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& scratch) {
  const PrimeField& f = assignment.field();
  auto arcs = net.snapshot_arcs(s);
  if (arcs.empty()) return;
  scratch.assign(x.size(), 0);
  for (const Arc& arc : arcs) {
    if (x[arc.from] != 0) scratch[arc.to] = f.add(scratch[arc.to], f.mul(assignment.weight(arc.param, s), x[arc.from]));
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.add(x[i], scratch[i]);
}

}  // namespace detail

/// W_c = [G_T...G_2 H_1, ..., G_T H_{T-1}, H_T] over GF(p), N x T.
/// Column k is accumulated right to left starting from H_k = T_k b^(o).
inline FieldMatrix assemble_wc(const TemporalNetwork& net, NodeId controlled, const FieldAssignment& assignment) {
  net.require_node(controlled);
  assignment.require_compatible(net);
  const std::size_t n = net.node_count();
  const TimeIndex horizon = net.horizon();
  FieldMatrix wc(n, horizon);
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> scratch;
  for (TimeIndex k = 1; k <= horizon; ++k) {
    x.assign(n, 0);
    x[controlled] = assignment.interval(k);
    for (TimeIndex s = k + 1; s <= horizon; ++s) detail::apply_step(net, s, assignment, x, scratch);
    wc.set_column(k - 1, x);
  }
  return wc;
}

struct CentralityConfig {
  std::uint64_t prime = kDefaultPrime;
  unsigned trials = 3;
  std::uint64_t master_seed = 1;
  /// Sampling intervals T_1..T_T; empty means all 1.
  std::vector<std::uint64_t> intervals;
};

struct CentralityReport {
  NodeId node = 0;
  std::size_t centrality = 0;  // S_M(o)
  unsigned trials = 0;
  std::vector<std::size_t> trial_ranks;
};

/// Seed of trial `trial` for controller `node`; independent of evaluation order.
inline std::uint64_t trial_seed(std::uint64_t master, NodeId node, unsigned trial) {
  return derive_seed(master, node, trial);
}

/// S_M(o): maximum over independent random assignments of rank(W_c).
inline CentralityReport controlling_centrality(const TemporalNetwork& net, NodeId controlled,
                                               const CentralityConfig& config = {}) {
  net.require_node(controlled);
  if (config.trials < 1) throw std::invalid_argument("at least one trial is required");
  const PrimeField field(config.prime);
  CentralityReport report;
  report.node = controlled;
  report.trials = config.trials;
  for (unsigned trial = 0; trial < config.trials; ++trial) {
    const auto assignment =
        FieldAssignment::random(net, field, trial_seed(config.master_seed, controlled, trial), config.intervals);
    const std::size_t rank = generic_rank(assemble_wc(net, controlled, assignment), field);
    report.trial_ranks.push_back(rank);
    report.centrality = std::max(report.centrality, rank);
  }
  return report;
}

/// Result of steering the controllable part of the state to zero.
struct InputSynthesis {
  std::size_t rank = 0;
  std::vector<std::size_t> controlled_rows;  // nodes whose final state is zeroed
  std::vector<std::uint64_t> inputs;         // u(0)..u(T-1)
  std::vector<std::uint64_t> final_state;    // x(T)
};

/// Diagnostic for rank-k controllability: picks k independent rows and
/// columns of W_c, solves the k x k system that cancels the free response
/// G_T...G_1 x(0) on those rows, and reports the resulting x(T).
inline InputSynthesis synthesize_inputs(const TemporalNetwork& net, NodeId controlled,
                                        const FieldAssignment& assignment,
                                        std::span<const std::uint64_t> initial_state) {
  const PrimeField& f = assignment.field();
  const std::size_t n = net.node_count();
  if (initial_state.size() != n) throw std::invalid_argument("initial state must have one entry per node");
  const FieldMatrix wc = assemble_wc(net, controlled, assignment);

  std::vector<std::uint64_t> drift(initial_state.begin(), initial_state.end());
  for (auto& v : drift) v = f.reduce(v);
  std::vector<std::uint64_t> scratch;
  for (TimeIndex s = 1; s <= net.horizon(); ++s) detail::apply_step(net, s, assignment, drift, scratch);

  const Echelon ech = row_echelon(wc, f);
  InputSynthesis out;
  out.rank = ech.rank;
  out.controlled_rows = ech.pivot_rows;
  out.inputs.assign(net.horizon(), 0);

  FieldMatrix sub(ech.rank, ech.rank);
  std::vector<std::uint64_t> rhs(ech.rank);
  for (std::size_t i = 0; i < ech.rank; ++i) {
    for (std::size_t j = 0; j < ech.rank; ++j) sub(i, j) = wc(ech.pivot_rows[i], ech.pivot_cols[j]);
    rhs[i] = f.neg(drift[ech.pivot_rows[i]]);
  }
  if (ech.rank > 0) {
    const auto u = solve_square(std::move(sub), std::move(rhs), f);
    if (u.empty()) throw std::logic_error("pivot submatrix of W_c is singular");
    for (std::size_t j = 0; j < ech.rank; ++j) out.inputs[ech.pivot_cols[j]] = u[j];
  }

  out.final_state = drift;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < wc.cols(); ++c) {
      if (out.inputs[c] != 0) out.final_state[r] = f.add(out.final_state[r], f.mul(wc(r, c), out.inputs[c]));
    }
  }
  std::sort(out.controlled_rows.begin(), out.controlled_rows.end());
  return out;
}

}  // namespace tempcc
