#include "qst/supnorm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "qst/errors.hpp"

namespace qst {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct Problem {
  const Matrix* transfer;
  int dim;
  mutable long evaluations = 0;
};

// One unit vector modulo global phase from 2(N-1) angles: hyperspherical
// magnitudes a_1..a_{N-1}, then relative phases b_1..b_{N-1}.
void unit_from_angles(const double* a, int n, Vector& u) {
  double tail = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    const double mag = tail * std::cos(a[i]);
    u(i) = i == 0 ? cplx{mag, 0.0} : std::polar(mag, a[n - 1 + i - 1]);
    tail *= std::sin(a[i]);
  }
  u(n - 1) = n == 1 ? cplx{tail, 0.0} : std::polar(tail, a[2 * (n - 1) - 1]);
}

int param_count(int n) { return 4 * (n - 1); }

void unpack(const double* x, int n, Vector& u, Vector& v) {
  unit_from_angles(x, n, u);
  unit_from_angles(x + 2 * (n - 1), n, v);
}

// Trace norm for the search loop. 2x2 has a closed form; larger operands
// use singular values only (sqrt of eigenvalues of W^dagger W loses about
// half the digits near rank-deficient maximizers).
double fast_trace_norm(const Matrix& w) {
  if (w.rows() == 2) return trace_norm_2x2(w);
  return Eigen::JacobiSVD<Matrix>(w).singularValues().sum();
}

double response(const Problem& p, const Vector& u, const Vector& v) {
  const int n = p.dim;
  Vector vecv(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) vecv(i + n * j) = u(i) * std::conj(v(j));
  Matrix w(n, n);
  Eigen::Map<Vector>(w.data(), n * n).noalias() = (*p.transfer) * vecv;
  ++p.evaluations;
  return fast_trace_norm(w);
}

double exact_response(const Matrix& transfer, int n, const Vector& u, const Vector& v) {
  const Matrix op = u * v.adjoint();
  Matrix w(n, n);
  Eigen::Map<Vector>(w.data(), n * n).noalias() = transfer * Eigen::Map<const Vector>(op.data(), n * n);
  return trace_norm(w);
}

double gsl_objective(const gsl_vector* x, void* params) {
  const auto* p = static_cast<const Problem*>(params);
  Vector u(p->dim), v(p->dim);
  unpack(x->data, p->dim, u, v);
  return -response(*p, u, v);
}

struct StartOutcome {
  double value = 0.0;
  Eigen::VectorXd params;
  long evaluations = 0;
};

using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;
using GslVectorPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;

StartOutcome run_start(const Matrix& transfer, int dim, const Eigen::VectorXd& x0, const SupNormOptions& opts,
                       double initial_step = 0.5) {
  Problem prob{&transfer, dim};
  const auto nparams = static_cast<std::size_t>(param_count(dim));
  gsl_multimin_function fn{&gsl_objective, nparams, &prob};
  GslVectorPtr x(gsl_vector_alloc(nparams), &gsl_vector_free);
  GslVectorPtr step(gsl_vector_alloc(nparams), &gsl_vector_free);
  for (std::size_t i = 0; i < nparams; ++i) gsl_vector_set(x.get(), i, x0(static_cast<Eigen::Index>(i)));
  gsl_vector_set_all(step.get(), initial_step);
  MinimizerPtr s(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, nparams),
                 &gsl_multimin_fminimizer_free);
  if (!s) throw NumericError("sup-norm: could not allocate the simplex minimizer");
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());
  int status = GSL_CONTINUE;
  // Stop on simplex size, or when the best value has stalled: maximizers of
  // difference maps often form ridges along which the simplex never shrinks.
  const int window = opts.stall_window * static_cast<int>(nparams);
  double best = std::numeric_limits<double>::infinity();
  int last_gain = 0;
  for (int iter = 0; iter < opts.max_iterations && status == GSL_CONTINUE; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), opts.simplex_tol);
    if (s->fval < best - opts.stall_tol * (1.0 + std::abs(best))) {
      best = s->fval;
      last_gain = iter;
    } else if (window > 0 && iter - last_gain > window) {
      break;
    }
  }
  StartOutcome out;
  out.params.resize(static_cast<Eigen::Index>(nparams));
  for (std::size_t i = 0; i < nparams; ++i) out.params(static_cast<Eigen::Index>(i)) = gsl_vector_get(s->x, i);
  out.value = -s->fval;
  if (!std::isfinite(out.value)) throw NumericError("sup-norm: objective became non-finite");
  out.evaluations = prob.evaluations;
  return out;
}

std::vector<Eigen::VectorXd> initial_points(int dim, const SupNormOptions& opts) {
  if (opts.starts < 1 && opts.warm_starts.empty()) throw DomainError("sup-norm: need at least one start");
  std::vector<Eigen::VectorXd> pts;
  for (const auto& w : opts.warm_starts) {
    if (w.size() != param_count(dim)) throw DimensionError("sup-norm: warm start has the wrong length");
    pts.push_back(w);
  }
  for (int k = 0; k < opts.starts; ++k) {
    std::mt19937_64 rng(mix64(opts.seed ^ mix64(static_cast<std::uint64_t>(k))));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXd x(param_count(dim));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = angle(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

SupNormResult reduce(const Matrix& transfer, int dim, const std::vector<StartOutcome>& outcomes,
                     const SupNormOptions& opts) {
  // Lowest index wins ties, so the result does not depend on scheduling.
  std::size_t best = 0;
  long evals = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    evals += outcomes[k].evaluations;
    if (outcomes[k].value > outcomes[best].value) best = k;
  }
  // Restart the winner with a small simplex.
  const StartOutcome polished = run_start(transfer, dim, outcomes[best].params, opts, 0.02);
  evals += polished.evaluations;
  SupNormResult r;
  r.evaluations = evals;
  r.params = polished.value > outcomes[best].value ? polished.params : outcomes[best].params;
  r.u.resize(dim);
  r.v.resize(dim);
  unpack(r.params.data(), dim, r.u, r.v);
  r.value = exact_response(transfer, dim, r.u, r.v);
  int near_best = 0;
  for (const auto& o : outcomes) near_best += (o.value >= outcomes[best].value - opts.spread_tol);
  r.converged = outcomes.size() < 2 || near_best >= 2;
  return r;
}

}  // namespace

double rank_one_response(const Channel& d, const Vector& u, const Vector& v) {
  if (u.size() != d.dim() || v.size() != d.dim()) throw DimensionError("rank_one_response: vector length mismatch");
  return exact_response(d.transfer(), d.dim(), u / u.norm(), v / v.norm());
}

SupNormResult superoperator_norm(const Channel& d, const SupNormOptions& opts) {
  silence_gsl();
  const int dim = d.dim();
  const auto pts = initial_points(dim, opts);
  std::vector<StartOutcome> outcomes(pts.size());
  const Matrix& transfer = d.transfer();
  std::vector<std::exception_ptr> errors(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < pts.size(); ++k) {
    try {
      outcomes[k] = run_start(transfer, dim, pts[k], opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reduce(transfer, dim, outcomes, opts);
}

SupNormResult superoperator_norm_serial(const Channel& d, const SupNormOptions& opts) {
  silence_gsl();
  const int dim = d.dim();
  const auto pts = initial_points(dim, opts);
  std::vector<StartOutcome> outcomes;
  outcomes.reserve(pts.size());
  for (const auto& x0 : pts) outcomes.push_back(run_start(d.transfer(), dim, x0, opts));
  return reduce(d.transfer(), dim, outcomes, opts);
}

namespace {

// ||G - H|| = ||H - G||, so fix the order of the difference to make the
// result exactly symmetric.
bool choi_less(const Channel& a, const Channel& b) {
  const Matrix& x = a.choi();
  const Matrix& y = b.choi();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const cplx p = x.data()[i], q = y.data()[i];
    if (p.real() != q.real()) return p.real() < q.real();
    if (p.imag() != q.imag()) return p.imag() < q.imag();
  }
  return false;
}

Channel difference(const Channel& g, const Channel& h) {
  if (g.qubits() != h.qubits()) throw DimensionError("sup-norm: gates act on different qubit counts");
  return choi_less(h, g) ? combine(1.0, h, -1.0, g) : combine(1.0, g, -1.0, h);
}

}  // namespace

SupNormResult sup_norm_distance(const Channel& g, const Channel& h, const SupNormOptions& opts) {
  return superoperator_norm(difference(g, h), opts);
}

SupNormResult sup_norm_distance_serial(const Channel& g, const Channel& h, const SupNormOptions& opts) {
  return superoperator_norm_serial(difference(g, h), opts);
}

}  // namespace qst
