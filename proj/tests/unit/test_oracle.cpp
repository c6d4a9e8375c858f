#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qst/errors.hpp"
#include "qst/gates.hpp"
#include "qst/noise.hpp"
#include "qst/oracle.hpp"

using namespace qst;

namespace {

ExperimentalEquation eq1(int exp, const char* w, const char* v, int var = 0, int arity = 1) {
  return ExperimentalEquation(1, arity, {{var, Embedding::Whole, exp}}, Bitstring(w), Bitstring(v), 0.5);
}

}  // namespace

TEST(Oracle, SameSeedSameStream) {
  Oracle a({gates::hadamard(0.0)}, 42), b({gates::hadamard(0.0)}, 42), c({gates::hadamard(0.0)}, 43);
  const auto eq = eq1(1, "0", "0");
  int differ = 0;
  for (int i = 0; i < 1000; ++i) {
    const int x = a.query(eq);
    EXPECT_EQ(x, b.query(eq));
    differ += x != c.query(eq);
  }
  EXPECT_GT(differ, 0);
  EXPECT_EQ(a.seed(), 42u);
}

TEST(Oracle, RejectsNonCompletelyPositiveGates) {
  EXPECT_THROW(Oracle({gates::transpose()}, 1), NotCompletelyPositive);
  EXPECT_THROW(Oracle({}, 1), DomainError);
}

TEST(Oracle, CountsQueries) {
  Oracle o({gates::hadamard(0.0)}, 7);
  const auto eq = eq1(1, "0", "0");
  EXPECT_EQ(o.query_count(), 0);
  for (int i = 0; i < 100; ++i) o.query(eq);
  EXPECT_EQ(o.query_count(), 100);
  o.estimate(eq, 250);
  EXPECT_EQ(o.query_count(), 350);
  const EquationSet set({eq, eq1(2, "0", "0")});
  o.estimate_each(set, 10);
  EXPECT_EQ(o.query_count(), 370);
}

TEST(Oracle, DeterministicOutcomes) {
  Oracle o({gates::hadamard(1.3)}, 3);
  const auto one = eq1(2, "0", "0"), zero = eq1(2, "1", "0");
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(o.query(one), 1);
    EXPECT_EQ(o.query(zero), 0);
  }
  EXPECT_EQ(o.estimate(one, 1000), 1.0);
  EXPECT_EQ(o.estimate(zero, 1000), 0.0);
}

TEST(Oracle, FairCoin) {
  Oracle o({gates::hadamard(0.0)}, 11);
  const auto eq = eq1(1, "0", "0");
  long ones = 0;
  for (int i = 0; i < 100000; ++i) ones += o.query(eq);
  EXPECT_GE(ones / 1e5, 0.494);
  EXPECT_LE(ones / 1e5, 0.506);
  EXPECT_NEAR(o.estimate(eq, 10000), 0.5, 0.02);
}

TEST(Oracle, EstimateIsReproducible) {
  const auto eq = eq1(1, "0", "0");
  Oracle a({gates::hadamard(0.0)}, 5), b({gates::hadamard(0.0)}, 5);
  EXPECT_EQ(a.estimate(eq, 5000), b.estimate(eq, 5000));
  EXPECT_THROW(a.estimate(eq, 0), DomainError);
}

TEST(Oracle, EmpiricalMeansTrackExactProbabilities) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 0.4);
  std::uniform_int_distribution<int> ex(0, 6), var(0, 1), bit(0, 1);
  const std::vector<Channel> gs{apply_noise(from_unitary(oracle::random_unitary(2, rng)), {NoiseKind::AmplitudeDamp, u(rng)}),
                                apply_noise(from_unitary(oracle::random_unitary(2, rng)), {NoiseKind::Depolarize, u(rng)})};
  std::vector<ExperimentalEquation> eqs;
  for (int t = 0; t < 20; ++t) {
    eqs.emplace_back(1, 2, std::vector<Step>{{var(rng), Embedding::Whole, ex(rng)}, {var(rng), Embedding::Whole, ex(rng)}},
                     Bitstring(bit(rng) ? "1" : "0"), Bitstring(bit(rng) ? "1" : "0"), 0.5);
  }
  const EquationSet set(eqs);
  Oracle o(gs, 99);
  const auto est = o.estimate_each(set, 100000);
  for (std::size_t i = 0; i < eqs.size(); ++i) EXPECT_NEAR(est[i], probability_term(eqs[i], gs), 0.01);
}

TEST(Oracle, SubstreamsAreScheduleIndependent) {
  const EquationSet set = family_equations(Family::hadamard());
  Oracle a({gates::hadamard(0.2)}, 17), b({gates::hadamard(0.2)}, 17);
  EXPECT_EQ(a.estimate_each(set, 3000), b.estimate_each_serial(set, 3000));
  // A second batch draws fresh substreams.
  EXPECT_NE(a.estimate_each(set, 3000)[0], b.estimate_each_serial(set, 1)[0] + 2.0);
  Oracle c({gates::hadamard(0.2)}, 17);
  const auto first = c.estimate_each(set, 3000);
  const auto second = c.estimate_each(set, 3000);
  EXPECT_NE(first[0], second[0]);
}

TEST(Oracle, IncompatibleEquations) {
  Oracle o({gates::hadamard(0.0)}, 1);
  EXPECT_THROW(o.query(eq1(1, "0", "0", 1, 2)), DimensionError);
  const ExperimentalEquation two(2, 1, {{0, Embedding::Whole, 1}}, Bitstring("00"), Bitstring("00"), 1.0);
  EXPECT_THROW(o.query(two), DimensionError);
}
