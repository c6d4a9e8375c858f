// Serial vs OpenMP timings for the hot kernels.

#include <benchmark/benchmark.h>

#include "qst/gates.hpp"
#include "qst/noise.hpp"
#include "qst/oracle.hpp"
#include "qst/roblab.hpp"
#include "qst/supnorm.hpp"

using namespace qst;

namespace {

const Channel& noisy_h() {
  static const Channel g = apply_noise(gates::hadamard(0.3), {NoiseKind::Depolarize, 0.02});
  return g;
}

void BM_SupNorm(benchmark::State& st) {
  const Channel c = gates::cnot(0.0), n = apply_noise(gates::cnot(0.1), {NoiseKind::Depolarize, 0.05});
  for (auto _ : st) {
    auto r = st.range(0) ? sup_norm_distance(c, n) : sup_norm_distance_serial(c, n);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_SupNorm)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_DistToFamily(benchmark::State& st) {
  const std::vector<Channel> g{noisy_h()};
  for (auto _ : st) {
    auto r = st.range(0) ? dist_to_family(g, Family::hadamard()) : dist_to_family_serial(g, Family::hadamard());
    benchmark::DoNotOptimize(r.distance);
  }
}
BENCHMARK(BM_DistToFamily)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_NoiseScan(benchmark::State& st) {
  FamilyDistanceOptions o;
  o.grid = 64;
  const std::vector<double> grid{0.0, 0.01, 0.02, 0.04, 0.08, 0.16, 0.32, 0.5};
  const std::vector<Channel> base{gates::hadamard(0.0)};
  for (auto _ : st) {
    auto r = st.range(0) ? noise_scan(Family::hadamard(), NoiseKind::Depolarize, grid, base, o)
                         : noise_scan_serial(Family::hadamard(), NoiseKind::Depolarize, grid, base, o);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_NoiseScan)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_EstimateEach(benchmark::State& st) {
  const EquationSet set = family_equations(Family::hadamard_cnot());
  Oracle o({gates::hadamard(0.0), gates::cnot(0.0)}, 1);
  for (auto _ : st) {
    auto r = st.range(0) ? o.estimate_each(set, 200000) : o.estimate_each_serial(set, 200000);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_EstimateEach)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
