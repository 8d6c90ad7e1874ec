#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <span>
#include <thread>
#include <vector>

#include "tempcc/controllability.hpp"
#include "tempcc/temporal_network.hpp"
#include "tempcc/trees.hpp"

namespace tempcc {

/// Everything the experiment tables report about one controller node.
struct NodeAnalysis {
  NodeId node = 0;
  std::size_t centrality = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t degree = 0;

  bool sandwiched() const { return lower <= centrality && centrality <= upper; }
  std::size_t gap() const { return upper >= lower ? upper - lower : lower - upper; }
};

struct AnalysisOptions {
  CentralityConfig centrality;
  unsigned workers = 1;
};

/// Runs `fn(i)` for i in [0, count) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Centrality and bounds for the listed nodes, returned in the given order.
inline std::vector<NodeAnalysis> analyze_nodes(const TemporalNetwork& net, std::span<const NodeId> nodes,
                                               const AnalysisOptions& options = {}) {
  const auto degrees = aggregated_degrees(net);
  std::vector<NodeAnalysis> out(nodes.size());
  parallel_for(nodes.size(), options.workers, [&](std::size_t i) {
    const NodeId o = nodes[i];
    const auto report = controlling_centrality(net, o, options.centrality);
    const auto bounds = controller_bounds(net, o);
    out[i] = {o, report.centrality, bounds.lower, bounds.upper, degrees[o]};
  });
  return out;
}

inline std::vector<NodeAnalysis> analyze_all(const TemporalNetwork& net, const AnalysisOptions& options = {}) {
  std::vector<NodeId> nodes(net.node_count());
  for (NodeId i = 0; i < nodes.size(); ++i) nodes[i] = i;
  return analyze_nodes(net, nodes, options);
}

inline std::size_t count_violations(std::span<const NodeAnalysis> rows) {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.sandwiched(); }));
}

/// Spearman rank correlation with average ranks for ties. NaN when either
/// sample is constant.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  auto ranks = [](std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

inline double degree_centrality_correlation(std::span<const NodeAnalysis> rows) {
  std::vector<double> d, c;
  for (const auto& r : rows) {
    d.push_back(static_cast<double>(r.degree));
    c.push_back(static_cast<double>(r.centrality));
  }
  return spearman(d, c);
}

/// Network without every node attaining the maximum centrality.
inline TemporalNetwork remove_most_powerful(const TemporalNetwork& net, std::span<const NodeAnalysis> rows) {
  std::size_t best = 0;
  for (const auto& r : rows) best = std::max(best, r.centrality);
  std::set<NodeId> removed;
  for (const auto& r : rows) {
    if (r.centrality == best) removed.insert(r.node);
  }
  return net.without_nodes(removed);
}

// --- CSV tables ---------------------------------------------------------------

inline void write_centrality_csv(std::span<const NodeAnalysis> rows, const TemporalNetwork& net, std::ostream& out) {
  out << "node,S_M,lower,upper,aggregated_degree\n";
  for (const auto& r : rows) {
    out << net.label(r.node) << ',' << r.centrality << ',' << r.lower << ',' << r.upper << ',' << r.degree << '\n';
  }
}

inline void write_fig5_csv(std::span<const NodeAnalysis> rows, const TemporalNetwork& net, std::ostream& out) {
  out << "node,calculated,lower,upper\n";
  for (const auto& r : rows) out << net.label(r.node) << ',' << r.centrality << ',' << r.lower << ',' << r.upper << '\n';
}

inline void write_fig6_csv(std::span<const NodeAnalysis> rows, const TemporalNetwork& net, std::ostream& out) {
  out << "node,aggregated_degree,gap\n";
  for (const auto& r : rows) out << net.label(r.node) << ',' << r.degree << ',' << r.gap() << '\n';
}

struct DegreeBin {
  std::size_t degree = 0;
  double mean_centrality = 0;
  std::size_t count = 0;
};

inline std::vector<DegreeBin> fig7_table(std::span<const NodeAnalysis> rows) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> acc;  // degree -> (sum, count)
  for (const auto& r : rows) {
    auto& [sum, count] = acc[r.degree];
    sum += r.centrality;
    ++count;
  }
  std::vector<DegreeBin> out;
  for (const auto& [degree, sc] : acc) {
    out.push_back({degree, static_cast<double>(sc.first) / static_cast<double>(sc.second), sc.second});
  }
  return out;
}

inline void write_fig7_csv(std::span<const NodeAnalysis> rows, std::ostream& out) {
  out << "aggregated_degree,mean_centrality,count\n";
  for (const auto& b : fig7_table(rows)) out << b.degree << ',' << b.mean_centrality << ',' << b.count << '\n';
}

/// centrality value -> number of nodes, ascending by value.
inline std::map<std::size_t, std::size_t> fig8_histogram(std::span<const NodeAnalysis> rows) {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& r : rows) ++hist[r.centrality];
  return hist;
}

inline void write_fig8_csv(std::span<const NodeAnalysis> rows, std::ostream& out) {
  out << "centrality_value,node_count\n";
  for (const auto& [value, count] : fig8_histogram(rows)) out << value << ',' << count << '\n';
}

}  // namespace tempcc
