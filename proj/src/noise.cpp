#include "qst/noise.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qst/errors.hpp"
#include "qst/gates.hpp"

namespace qst {

namespace {

Channel on_every_qubit(const Channel& one, int qubits) {
  Channel out = one;
  for (int q = 1; q < qubits; ++q) out = tensor_channels(out, one);
  return out;
}

Channel amplitude_damping(double gamma) {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  const std::vector<Matrix> ops{k0, k1};
  return from_kraus(ops);
}

// Pushes the relative eigenphase of a one-qubit unitary further from zero
// by delta, keeping the eigenvectors (the rotation axis).
std::optional<Channel> overrotate_unitary(const Channel& g, double delta) {
  if (g.qubits() != 1 || !is_unitary_channel(g, 1e-9)) return std::nullopt;
  const Matrix u = unitary_of(g);
  Eigen::ComplexEigenSolver<Matrix> es(u);
  if (es.info() != Eigen::Success) return std::nullopt;
  const cplx l0 = es.eigenvalues()(0);
  const cplx l1 = es.eigenvalues()(1);
  const double rel = std::arg(l1 / l0);
  if (std::abs(rel) < 1e-9) return std::nullopt;  // identity: no axis
  Matrix vecs = es.eigenvectors();
  // Orthonormalize; eigenvectors of distinct eigenvalues of a unitary are
  // orthogonal up to rounding.
  Eigen::HouseholderQR<Matrix> qr(vecs);
  Matrix q = qr.householderQ();
  const Vector e0 = q.col(0);
  const Vector e1 = q.col(1);
  const double sign = rel >= 0.0 ? 1.0 : -1.0;
  const Matrix noisy = l0 * (e0 * e0.adjoint()) + l1 * std::polar(1.0, sign * delta) * (e1 * e1.adjoint());
  return from_unitary(noisy);
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Depolarize: return "depolarize";
    case NoiseKind::Overrotate: return "overrotate";
    case NoiseKind::PhaseDrift: return "phase_drift";
    case NoiseKind::AmplitudeDamp: return "amplitude_damp";
  }
  return "unknown";
}

std::optional<NoiseKind> parse_noise_kind(std::string_view name) {
  if (name == "depolarize") return NoiseKind::Depolarize;
  if (name == "overrotate") return NoiseKind::Overrotate;
  if (name == "phase_drift") return NoiseKind::PhaseDrift;
  if (name == "amplitude_damp") return NoiseKind::AmplitudeDamp;
  return std::nullopt;
}

Channel depolarizing(int qubits, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("depolarize strength must lie in [0,1]");
  const int n = 1 << qubits;
  // Transfer matrix of rho -> Tr(rho) I/N: vec(I)/N times vec(I)^T.
  Vector vec_id = Vector::Zero(n * n);
  for (int a = 0; a < n; ++a) vec_id(a + n * a) = 1.0;
  const Matrix trace_out = vec_id * vec_id.transpose() / static_cast<double>(n);
  return Channel::from_transfer(qubits, (1.0 - lambda) * Matrix::Identity(n * n, n * n) + lambda * trace_out);
}

Channel apply_noise(const Channel& g, NoiseModel m) {
  const double s = m.strength;
  switch (m.kind) {
    case NoiseKind::Depolarize:
      return compose(depolarizing(g.qubits(), s), g);
    case NoiseKind::AmplitudeDamp:
      if (!(s >= 0.0 && s <= 1.0)) throw DomainError("amplitude_damp strength must lie in [0,1]");
      return compose(on_every_qubit(amplitude_damping(s), g.qubits()), g);
    case NoiseKind::Overrotate: {
      if (!(std::abs(s) <= std::numbers::pi)) throw DomainError("overrotate strength must satisfy |delta| <= pi");
      if (auto rotated = overrotate_unitary(g, s)) return *rotated;
      return compose(on_every_qubit(gates::phase(s), g.qubits()), g);
    }
    case NoiseKind::PhaseDrift: {
      if (!(std::abs(s) <= std::numbers::pi)) throw DomainError("phase_drift strength must satisfy |delta| <= pi");
      const Channel p = on_every_qubit(gates::phase(s), g.qubits());
      const Channel p_inv = on_every_qubit(gates::phase(-s), g.qubits());
      return compose(p, compose(g, p_inv));
    }
  }
  throw DomainError("unknown noise kind");
}

}  // namespace qst
