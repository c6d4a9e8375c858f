#pragma once

// Induced trace-norm ("superoperator") norm
//
//   ||D||_inf = sup { ||D(V)||_1 : ||V||_1 = 1 }
//
// The supremum of a convex function over the trace-norm ball is attained
// at an extreme point, i.e. a rank-one V = |u><v| with unit u, v. The kernel
// maximizes ||D(|u><v|)||_1 over (u, v) with multistart Nelder-Mead. Each
// unit vector is written with hyperspherical angles and relative phases,
// 2(N-1) reals modulo global phase, so the search has no flat directions.
// Every
// evaluated point is a certified lower bound, so the reported value never
// overshoots the true norm.
//
// Two entry points per operation: the default runs the starts under OpenMP,
// the *_serial variant runs them in order on one thread. Both use the same
// per-start seeds and the same tie-breaking, so they return identical
// results.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qst/channel.hpp"

namespace qst {

struct SupNormOptions {
  int starts = 64;
  double simplex_tol = 1e-8;
  int max_iterations = 20000;
  /// Also stop after stall_window * (number of parameters) iterations
  /// without a relative gain of stall_tol. 0 disables the stall test.
  int stall_window = 25;
  double stall_tol = 1e-12;
  std::uint64_t seed = 0x5eed5eed5eedULL;
  /// Converged when at least two starts land within this of the best value.
  double spread_tol = 1e-4;
  /// Extra initial points (raw parameter vectors of length 4(N-1)), tried
  /// before the random starts.
  std::vector<Eigen::VectorXd> warm_starts;
};

struct SupNormResult {
  double value = 0.0;
  bool converged = true;
  Vector u;
  Vector v;
  /// Raw optimizer coordinates of the maximizer; feed back as a warm start.
  Eigen::VectorXd params;
  long evaluations = 0;
};

/// ||D(|u><v|)||_1 for unit u, v; the objective of the maximization.
double rank_one_response(const Channel& d, const Vector& u, const Vector& v);

SupNormResult superoperator_norm(const Channel& d, const SupNormOptions& opts = {});
SupNormResult superoperator_norm_serial(const Channel& d, const SupNormOptions& opts = {});

/// ||G - H||_inf.
SupNormResult sup_norm_distance(const Channel& g, const Channel& h, const SupNormOptions& opts = {});
SupNormResult sup_norm_distance_serial(const Channel& g, const Channel& h, const SupNormOptions& opts = {});

/// splitmix64 finalizer; used to derive independent per-start seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace qst
