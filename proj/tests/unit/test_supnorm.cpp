#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qst/errors.hpp"
#include "qst/gates.hpp"
#include "qst/noise.hpp"
#include "qst/supnorm.hpp"

using namespace qst;

namespace {

Channel random_channel(int qubits, int k, std::mt19937_64& rng) {
  const int n = 1 << qubits;
  const Matrix u = oracle::random_unitary(n * k, rng);
  std::vector<Matrix> ops;
  for (int j = 0; j < k; ++j) ops.push_back(u.block(j * n, 0, n, n));
  return from_kraus(ops);
}

}  // namespace

TEST(SupNorm, SelfDistanceIsZero) {
  const Channel h = gates::hadamard(0.8);
  EXPECT_LE(sup_norm_distance(h, h).value, 1e-14);
}

TEST(SupNorm, ChannelsHaveUnitNorm) {
  std::mt19937_64 rng(41);
  for (int q : {1, 2}) {
    for (int t = 0; t < 3; ++t) {
      const Channel g = random_channel(q, 1 + t, rng);
      EXPECT_NEAR(sup_norm_distance(g, Channel::zero(q)).value, 1.0, 1e-9);
    }
  }
}

TEST(SupNorm, ClosedFormValues) {
  // ||I - D_lambda|| = lambda ||V - Tr(V) I/2||, maximized at 1 for u orthogonal to v.
  EXPECT_NEAR(sup_norm_distance(Channel::identity(1), depolarizing(1, 0.1)).value, 0.1, 1e-9);
  // On 2 qubits the maximum is at u = v: lambda * 2 (N-1)/N.
  EXPECT_NEAR(sup_norm_distance(Channel::identity(2), depolarizing(2, 0.1)).value, 0.15, 1e-9);
  EXPECT_NEAR(sup_norm_distance(gates::transpose(), Channel::identity(1)).value, 2.0, 1e-9);
  EXPECT_NEAR(sup_norm_distance(gates::measurement(1), gates::hadamard(0.7)).value, (1 + std::sqrt(5.0)) / 2, 1e-9);
}

TEST(SupNorm, AgreesWithSamplingOracle) {
  const Channel d = combine(1.0, Channel::identity(1), -1.0, depolarizing(1, 0.1));
  const double sampled = oracle::sampled_sup_norm(d.choi(), 2, 100000, 7);
  const double value = superoperator_norm(d).value;
  EXPECT_NEAR(value, sampled, 1e-3);

  std::mt19937_64 rng(42);
  for (int q : {1, 2}) {
    for (int t = 0; t < 3; ++t) {
      const Channel g = random_channel(q, 2, rng), h = random_channel(q, 2, rng);
      const Channel diff = combine(1.0, g, -1.0, h);
      const double bf = oracle::sampled_sup_norm(diff.choi(), 1 << q, 20000, 100 + t);
      const SupNormResult r = sup_norm_distance(g, h);
      EXPECT_GE(r.value, bf - 1e-9);
      EXPECT_LE(r.value, 2.0 + 1e-12);
      EXPECT_LE(r.value - bf, 0.15 * r.value);
    }
  }
}

TEST(SupNorm, ReportedMaximizerReproducesValue) {
  std::mt19937_64 rng(43);
  const Channel g = random_channel(1, 2, rng), h = random_channel(1, 3, rng);
  const SupNormResult r = sup_norm_distance(g, h);
  EXPECT_NEAR(r.u.norm(), 1.0, 1e-12);
  EXPECT_NEAR(r.v.norm(), 1.0, 1e-12);
  const Channel diff = combine(1.0, g, -1.0, h);
  EXPECT_NEAR(rank_one_response(diff, r.u, r.v), r.value, 1e-12);
  EXPECT_NEAR(oracle::trace_norm_eig(oracle::choi_apply(diff.choi(), r.u * r.v.adjoint())), r.value, 1e-10);
}

TEST(SupNorm, SerialAndParallelAgree) {
  std::mt19937_64 rng(44);
  for (int q : {1, 2}) {
    const Channel g = random_channel(q, 2, rng), h = random_channel(q, 2, rng);
    const SupNormResult a = sup_norm_distance(g, h), b = sup_norm_distance_serial(g, h);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.params, b.params);
    EXPECT_EQ(a.converged, b.converged);
  }
}

TEST(SupNorm, MetricProperties) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 10; ++t) {
    const Channel a = random_channel(1, 2, rng), b = random_channel(1, 2, rng), c = random_channel(1, 1, rng);
    const double ab = sup_norm_distance(a, b).value, ba = sup_norm_distance(b, a).value;
    EXPECT_EQ(ab, ba);
    EXPECT_LE(ab, sup_norm_distance(a, c).value + sup_norm_distance(c, b).value + 2e-3);
  }
}

TEST(SupNorm, WarmStartAndOptions) {
  const Channel g = gates::hadamard(0.0), h = apply_noise(g, {NoiseKind::Overrotate, 0.2});
  const SupNormResult cold = sup_norm_distance(g, h);
  SupNormOptions warm;
  warm.starts = 0;
  warm.warm_starts = {cold.params};
  EXPECT_NEAR(sup_norm_distance(g, h, warm).value, cold.value, 1e-9);
  warm.warm_starts = {Eigen::VectorXd::Zero(3)};
  EXPECT_THROW(sup_norm_distance(g, h, warm), DimensionError);
  SupNormOptions none;
  none.starts = 0;
  EXPECT_THROW(sup_norm_distance(g, h, none), DomainError);
  EXPECT_THROW(sup_norm_distance(g, gates::cnot(0.0)), DimensionError);
}

TEST(SupNorm, ConvergenceFlagNeedsTwoAgreeingStarts) {
  SupNormOptions one;
  one.starts = 1;
  EXPECT_TRUE(sup_norm_distance(gates::hadamard(0), gates::measurement(1), one).converged);
  EXPECT_TRUE(sup_norm_distance(gates::hadamard(0), gates::measurement(1)).converged);
}

TEST(SupNorm, IdentityOnThreeStatesMeansIdentity) {
  // A channel fixing |0>, |1> and zeta_x+ is the identity; random channels
  // essentially never do, and none that does may be far from the identity.
  std::mt19937_64 rng(46);
  const Matrix k0 = rho_of(1, 0).matrix(), k1 = rho_of(0, 0).matrix(), zx = rho_of(0.5, 0.5).matrix();
  int fixed = 0;
  for (int t = 0; t < 500; ++t) {
    const Channel g = random_channel(1, 1 + t % 4, rng);
    const double dev = std::max({trace_norm(g(k0) - k0), trace_norm(g(k1) - k1), trace_norm(g(zx) - zx)});
    if (dev <= 1e-9) {
      ++fixed;
      EXPECT_LE(sup_norm_distance(g, Channel::identity(1)).value, 1e-3);
    }
  }
  const Channel id = Channel::identity(1);
  EXPECT_LE(sup_norm_distance(id, id).value, 1e-3);
  EXPECT_GE(fixed, 0);
}
