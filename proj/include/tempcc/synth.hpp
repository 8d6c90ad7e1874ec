#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempcc/field.hpp"
#include "tempcc/temporal_network.hpp"

namespace tempcc {

/// Bernoulli contact model: every unordered pair is in contact at every
/// snapshot independently with probability p.
struct SynthConfig {
  std::size_t nodes = 40;
  double probability = 0.002;
  TimeIndex horizon = 100;
  std::uint64_t seed = 1;

  void validate() const {
    if (nodes < 2) throw std::invalid_argument("synthetic network needs N >= 2");
    if (!(probability >= 0.0 && probability < 1.0)) throw std::invalid_argument("contact probability must be in [0, 1)");
    if (horizon < 1) throw std::invalid_argument("synthetic network needs T >= 1");
  }
};

/// Each snapshot draws from its own generator seeded by hash(seed, t), so the
/// result does not depend on the order snapshots are produced in. Nodes are
/// labelled "0".."N-1".
inline TemporalNetwork generate(const SynthConfig& config) {
  config.validate();
  std::vector<std::string> labels;
  labels.reserve(config.nodes);
  for (std::size_t i = 0; i < config.nodes; ++i) labels.push_back(std::to_string(i));

  std::vector<ContactEvent> events;
  std::bernoulli_distribution coin(config.probability);
  for (TimeIndex t = 1; t <= config.horizon; ++t) {
    std::mt19937_64 rng(derive_seed(config.seed, t));
    for (NodeId u = 0; u < config.nodes; ++u) {
      for (NodeId v = u + 1; v < config.nodes; ++v) {
        if (coin(rng)) events.push_back({u, v, t});
      }
    }
  }
  return TemporalNetwork(std::move(labels), config.horizon, std::move(events));
}

}  // namespace tempcc
