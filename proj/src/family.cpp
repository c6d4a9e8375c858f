#include "qst/family.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>

#include "qst/errors.hpp"
#include "qst/gates.hpp"

namespace qst {

double PiFraction::radians() const { return static_cast<double>(num) / static_cast<double>(den) * std::numbers::pi; }

std::string PiFraction::str() const {
  if (den == 1) return num == 1 ? "pi" : std::to_string(num) + "pi";
  return std::to_string(num) + "/" + std::to_string(den) + "pi";
}

Family Family::r_alpha_theta(PiFraction alpha, double theta) {
  if (alpha.den < 1 || std::gcd(alpha.num, alpha.den) != 1 || alpha.num <= 0 || alpha.num > alpha.den) {
    throw DomainError("R(alpha,theta): alpha must be a reduced fraction of pi in (0, pi]");
  }
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2 + 1e-15)) {
    throw DomainError("R(alpha,theta): theta must lie in (0, pi/2]");
  }
  if (alpha.num == 1 && alpha.den == 1 && std::abs(theta - std::numbers::pi / 2) < 1e-12) {
    throw DomainError("R(pi, pi/2) (the NOT family) is not characterizable by one-variable equations");
  }
  return Family(FamilyId::RAlphaTheta, alpha, theta);
}

Family Family::hadamard() { return Family(FamilyId::Hadamard, PiFraction{1, 1}, std::numbers::pi / 4); }
Family Family::hadamard_not() { return Family(FamilyId::HadamardNot, std::nullopt, std::nullopt); }

Family Family::hadamard_phase(PiFraction alpha) {
  if (alpha.den < 1 || std::gcd(alpha.num, alpha.den) != 1 || alpha.num <= 0 || alpha.num > alpha.den) {
    throw DomainError("H x R_alpha: alpha must be a reduced fraction of pi in (0, pi]");
  }
  return Family(FamilyId::HadamardPhase, alpha, std::nullopt);
}

Family Family::hadamard_cnot() { return Family(FamilyId::HadamardCnot, std::nullopt, std::nullopt); }
Family Family::hadamard_phase_cnot() { return Family(FamilyId::HadamardPhaseCnot, PiFraction{1, 4}, std::nullopt); }

Family Family::from_name(std::string_view name, std::optional<PiFraction> alpha, std::optional<double> theta) {
  if (name == "hadamard") return hadamard();
  if (name == "hadamard-not") return hadamard_not();
  if (name == "hadamard-cnot") return hadamard_cnot();
  if (name == "hadamard-phase-cnot") return hadamard_phase_cnot();
  if (name == "hadamard-phase") {
    if (!alpha) throw DomainError("family hadamard-phase needs --alpha");
    return hadamard_phase(*alpha);
  }
  if (name == "r-alpha-theta") {
    if (!alpha || !theta) throw DomainError("family r-alpha-theta needs --alpha and --theta");
    return r_alpha_theta(*alpha, *theta);
  }
  throw DomainError("unknown family '" + std::string(name) + "'");
}

std::string Family::name() const {
  switch (id_) {
    case FamilyId::RAlphaTheta: return "r-alpha-theta";
    case FamilyId::Hadamard: return "hadamard";
    case FamilyId::HadamardNot: return "hadamard-not";
    case FamilyId::HadamardPhase: return "hadamard-phase";
    case FamilyId::HadamardCnot: return "hadamard-cnot";
    case FamilyId::HadamardPhaseCnot: return "hadamard-phase-cnot";
  }
  return "unknown";
}

int Family::arity() const { return static_cast<int>(gate_qubits().size()); }

std::vector<int> Family::gate_qubits() const {
  switch (id_) {
    case FamilyId::RAlphaTheta:
    case FamilyId::Hadamard: return {1};
    case FamilyId::HadamardNot:
    case FamilyId::HadamardPhase: return {1, 1};
    case FamilyId::HadamardCnot: return {1, 2};
    case FamilyId::HadamardPhaseCnot: return {1, 1, 2};
  }
  return {};
}

bool Family::has_sign() const {
  return id_ == FamilyId::RAlphaTheta || id_ == FamilyId::HadamardPhase || id_ == FamilyId::HadamardPhaseCnot;
}

std::vector<Channel> Family::member(double phi, int sign) const {
  if (sign != 1 && sign != -1) throw DomainError("family sign must be +1 or -1");
  switch (id_) {
    case FamilyId::RAlphaTheta: return {gates::rotation(sign * alpha_->radians(), *theta_, phi)};
    case FamilyId::Hadamard: return {gates::hadamard(phi)};
    case FamilyId::HadamardNot: return {gates::hadamard(phi), gates::negation(phi)};
    case FamilyId::HadamardPhase: return {gates::hadamard(phi), gates::phase(sign * alpha_->radians())};
    case FamilyId::HadamardCnot: return {gates::hadamard(phi), gates::cnot(phi)};
    case FamilyId::HadamardPhaseCnot:
      return {gates::hadamard(phi), gates::phase(sign * alpha_->radians()), gates::cnot(phi)};
  }
  throw DomainError("unknown family");
}

namespace {

struct TupleEval {
  double value = 0.0;
  bool converged = true;
  std::vector<Eigen::VectorXd> params;
};

TupleEval evaluate(std::span<const Channel> gates, const Family& family, double phi, int sign,
                   const SupNormOptions& base, const std::vector<Eigen::VectorXd>* warm, bool parallel) {
  const auto members = family.member(phi, sign);
  TupleEval e;
  for (std::size_t i = 0; i < members.size(); ++i) {
    SupNormOptions opts = base;
    if (warm && i < warm->size()) opts.warm_starts = {(*warm)[i]};
    const auto r = parallel ? sup_norm_distance(gates[i], members[i], opts)
                            : sup_norm_distance_serial(gates[i], members[i], opts);
    e.value = std::max(e.value, r.value);
    e.converged = e.converged && r.converged;
    e.params.push_back(r.params);
  }
  return e;
}

void check_tuple(std::span<const Channel> gates, const Family& family) {
  const auto qubits = family.gate_qubits();
  if (gates.size() != qubits.size()) {
    throw DimensionError("gate tuple has " + std::to_string(gates.size()) + " components, family " + family.name() +
                         " needs " + std::to_string(qubits.size()));
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (gates[i].qubits() != qubits[i]) throw DimensionError("gate tuple component has the wrong qubit count");
  }
}

double wrap_phi(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  return r < 0.0 ? r + two_pi : r;
}

FamilyDistance run(std::span<const Channel> gates, const Family& family, const FamilyDistanceOptions& opts,
                   bool parallel) {
  check_tuple(gates, family);
  if (opts.grid < 4) throw DomainError("dist_to_family: grid needs at least 4 points");
  const std::vector<int> signs = family.has_sign() ? std::vector<int>{1, -1} : std::vector<int>{1};
  const double step = 2.0 * std::numbers::pi / opts.grid;
  const int total = static_cast<int>(signs.size()) * opts.grid;

  std::vector<double> coarse(static_cast<std::size_t>(total));
  if (parallel) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < total; ++k) {
      try {
        coarse[static_cast<std::size_t>(k)] =
            evaluate(gates, family, (k % opts.grid) * step, signs[static_cast<std::size_t>(k / opts.grid)],
                     opts.coarse, nullptr, false)
                .value;
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (int k = 0; k < total; ++k) {
      coarse[static_cast<std::size_t>(k)] =
          evaluate(gates, family, (k % opts.grid) * step, signs[static_cast<std::size_t>(k / opts.grid)],
                   opts.coarse, nullptr, false)
              .value;
    }
  }
  const auto best_k = static_cast<int>(std::min_element(coarse.begin(), coarse.end()) - coarse.begin());
  const int sign = signs[static_cast<std::size_t>(best_k / opts.grid)];
  const double phi0 = (best_k % opts.grid) * step;

  // Golden-section search on [phi0 - step, phi0 + step].
  double best_phi = phi0;
  TupleEval best_eval = evaluate(gates, family, phi0, sign, opts.refine, nullptr, parallel);
  std::vector<Eigen::VectorXd> warm = best_eval.params;
  auto f = [&](double phi) {
    TupleEval e = evaluate(gates, family, phi, sign, opts.refine, &warm, parallel);
    warm = e.params;
    if (e.value < best_eval.value) {
      best_eval = e;
      best_phi = phi;
    }
    return e.value;
  };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = phi0 - step, b = phi0 + step;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > opts.phi_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }

  const TupleEval final_eval = evaluate(gates, family, best_phi, sign, opts.fine, &best_eval.params, parallel);
  return FamilyDistance{final_eval.value, wrap_phi(best_phi), sign, final_eval.converged};
}

}  // namespace

FamilyDistance dist_to_family(std::span<const Channel> gates, const Family& family, const FamilyDistanceOptions& opts) {
  return run(gates, family, opts, true);
}

FamilyDistance dist_to_family_serial(std::span<const Channel> gates, const Family& family,
                                     const FamilyDistanceOptions& opts) {
  return run(gates, family, opts, false);
}

}  // namespace qst
