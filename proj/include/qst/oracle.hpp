#pragma once

// Simulated experimental oracle: prepare |w>, run an equation's program,
// measure once in the computational basis, answer whether the outcome was v.
//
// RNG: std::mt19937_64 (MT19937-64, fixed by the C++ standard), uniform
// doubles as (x >> 11) * 2^-53. Each equation handed to estimate_each gets
// its own generator seeded with mix64(seed ^ mix64(batch << 32 | index)),
// so per-equation estimates do not depend on evaluation order.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qst/channel.hpp"
#include "qst/equations.hpp"

namespace qst {

class Oracle {
 public:
  /// NotCompletelyPositive if any gate fails the Choi check.
  Oracle(std::vector<Channel> gates, std::uint64_t seed);

  /// One draw: 1 with probability Pr^v of eq's program, else 0.
  int query(const ExperimentalEquation& eq);

  /// Mean of `samples` queries from the main stream.
  double estimate(const ExperimentalEquation& eq, long samples);

  /// One estimate per equation, each from its own substream. The parallel
  /// and serial variants return identical values.
  std::vector<double> estimate_each(const EquationSet& set, long samples);
  std::vector<double> estimate_each_serial(const EquationSet& set, long samples);

  long long query_count() const { return query_count_; }
  std::uint64_t seed() const { return seed_; }
  int arity() const { return static_cast<int>(gates_.size()); }

  /// DimensionError unless eq fits the hidden tuple.
  void check(const ExperimentalEquation& eq) const;

 private:
  double exact(const ExperimentalEquation& eq);
  std::vector<double> prepare(const EquationSet& set, long samples);

  std::vector<Channel> gates_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::uint64_t batch_ = 0;
  long long query_count_ = 0;
  std::map<std::string, double> cache_;
};

}  // namespace qst
