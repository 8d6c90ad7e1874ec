#pragma once

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "oracle/oracle.hpp"
#include "tempcc/tempcc.hpp"

namespace testing_support {

inline std::string data_path(const std::string& name) { return std::string(TEMPCC_DATA_DIR) + "/" + name; }

inline tempcc::TemporalNetwork load(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("cannot open " + data_path(name));
  return tempcc::parse_contact_list(in);
}

inline oracle::Instance to_instance(const tempcc::TemporalNetwork& net) {
  oracle::Instance inst{net.node_count(), net.horizon(), {}};
  for (const auto& e : net.events()) inst.contacts.push_back({e.u, e.v, e.t});
  return inst;
}

/// Small random network: N in [2, max_nodes], T in [1, max_horizon], p in [0.05, 0.5].
inline tempcc::TemporalNetwork random_network(std::mt19937_64& rng, std::size_t max_nodes, tempcc::TimeIndex max_horizon) {
  std::uniform_int_distribution<std::size_t> n_dist(2, max_nodes);
  std::uniform_int_distribution<tempcc::TimeIndex> t_dist(1, max_horizon);
  std::uniform_real_distribution<double> p_dist(0.05, 0.5);
  tempcc::SynthConfig config;
  config.nodes = n_dist(rng);
  config.horizon = t_dist(rng);
  config.probability = p_dist(rng);
  config.seed = rng();
  return tempcc::generate(config);
}

}  // namespace testing_support
