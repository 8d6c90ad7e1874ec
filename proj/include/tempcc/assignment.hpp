#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempcc/field.hpp"
#include "tempcc/temporal_network.hpp"

namespace tempcc {

/// Valuation of every free parameter as a nonzero element of GF(p), together
/// with the sampling intervals T_1..T_T used to discretize the dynamics.
class FieldAssignment {
 public:
  FieldAssignment(PrimeField field, std::uint64_t seed, std::vector<std::uint64_t> values,
                  std::vector<std::uint64_t> intervals)
      : field_(field), seed_(seed), values_(std::move(values)), intervals_(std::move(intervals)) {
    for (auto v : values_) {
      if (v == 0 || v >= field_.modulus()) throw std::invalid_argument("parameter value outside [1, p-1]");
    }
    for (auto& dt : intervals_) {
      if (dt == 0) throw std::invalid_argument("sampling intervals must be positive");
      dt = field_.reduce(dt);
      if (dt == 0) throw std::invalid_argument("sampling interval vanishes modulo p");
    }
  }

  /// Uniform nonzero values drawn from a generator seeded with `seed`.
  /// Empty `intervals` means unit sampling intervals.
  static FieldAssignment random(const TemporalNetwork& net, const PrimeField& field, std::uint64_t seed,
                                std::vector<std::uint64_t> intervals = {}) {
    if (intervals.empty()) intervals.assign(net.horizon(), 1);
    if (intervals.size() != net.horizon()) {
      throw std::invalid_argument("expected " + std::to_string(net.horizon()) + " sampling intervals");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, field.modulus() - 1);
    std::vector<std::uint64_t> values(net.event_count());
    for (auto& v : values) v = dist(rng);
    return FieldAssignment(field, seed, std::move(values), std::move(intervals));
  }

  const PrimeField& field() const { return field_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<std::uint64_t>& values() const { return values_; }
  const std::vector<std::uint64_t>& intervals() const { return intervals_; }

  std::uint64_t value(ParamId param) const { return values_.at(param); }
  /// T_t, 1-based snapshot index.
  std::uint64_t interval(TimeIndex t) const { return intervals_.at(t - 1); }
  /// Entry of T_t * A_t for the interaction `param` active at snapshot t.
  std::uint64_t weight(ParamId param, TimeIndex t) const { return field_.mul(interval(t), value(param)); }

  void require_compatible(const TemporalNetwork& net) const {
    if (values_.size() != net.event_count() || intervals_.size() != net.horizon()) {
      throw std::invalid_argument("assignment does not match the network's symbol table");
    }
  }

 private:
  PrimeField field_;
  std::uint64_t seed_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint64_t> intervals_;
};

}  // namespace tempcc
