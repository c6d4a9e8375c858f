#include "qst/oracle.hpp"

#include <algorithm>

#include "qst/errors.hpp"
#include "qst/supnorm.hpp"

namespace qst {

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

long draw(std::mt19937_64& rng, double p, long samples) {
  long ones = 0;
  for (long i = 0; i < samples; ++i) ones += uniform(rng) < p;
  return ones;
}

}  // namespace

Oracle::Oracle(std::vector<Channel> gates, std::uint64_t seed) : gates_(std::move(gates)), seed_(seed), rng_(seed) {
  if (gates_.empty()) throw DomainError("oracle needs at least one gate");
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (!gates_[i].is_cp()) {
      throw NotCompletelyPositive("gate " + std::to_string(i) + " is not completely positive (Choi eigenvalue " +
                                  std::to_string(gates_[i].choi_min_eigenvalue()) + ")");
    }
    if (!gates_[i].is_tp()) throw DomainError("gate " + std::to_string(i) + " is not trace preserving");
  }
}

void Oracle::check(const ExperimentalEquation& eq) const { check_compatible(eq, gates_); }

double Oracle::exact(const ExperimentalEquation& eq) {
  const std::string key = to_json(eq).dump();
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    const double p = std::clamp(probability_term(eq, gates_), 0.0, 1.0);
    it = cache_.emplace(key, p).first;
  }
  return it->second;
}

int Oracle::query(const ExperimentalEquation& eq) {
  const double p = exact(eq);
  ++query_count_;
  return uniform(rng_) < p ? 1 : 0;
}

double Oracle::estimate(const ExperimentalEquation& eq, long samples) {
  if (samples < 1) throw DomainError("estimate needs at least one sample");
  const double p = exact(eq);
  const long ones = draw(rng_, p, samples);
  query_count_ += samples;
  return static_cast<double>(ones) / static_cast<double>(samples);
}

std::vector<double> Oracle::prepare(const EquationSet& set, long samples) {
  if (samples < 1) throw DomainError("estimate needs at least one sample");
  std::vector<double> probs;
  probs.reserve(set.equations().size());
  for (const auto& eq : set.equations()) probs.push_back(exact(eq));
  return probs;
}

std::vector<double> Oracle::estimate_each(const EquationSet& set, long samples) {
  const auto probs = prepare(set, samples);
  const std::uint64_t batch = batch_++;
  const int d = static_cast<int>(probs.size());
  std::vector<double> out(probs.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < d; ++i) {
    std::mt19937_64 sub(mix64(seed_ ^ mix64((batch << 32) | static_cast<std::uint64_t>(i))));
    out[static_cast<std::size_t>(i)] =
        static_cast<double>(draw(sub, probs[static_cast<std::size_t>(i)], samples)) / static_cast<double>(samples);
  }
  query_count_ += static_cast<long long>(d) * samples;
  return out;
}

std::vector<double> Oracle::estimate_each_serial(const EquationSet& set, long samples) {
  const auto probs = prepare(set, samples);
  const std::uint64_t batch = batch_++;
  std::vector<double> out;
  out.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::mt19937_64 sub(mix64(seed_ ^ mix64((batch << 32) | i)));
    out.push_back(static_cast<double>(draw(sub, probs[i], samples)) / static_cast<double>(samples));
  }
  query_count_ += static_cast<long long>(probs.size()) * samples;
  return out;
}

}  // namespace qst
