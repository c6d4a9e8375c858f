#include "qst/bloch.hpp"

#include <cmath>
#include <numbers>

#include "qst/errors.hpp"

namespace qst {

namespace {

double wrap_two_pi(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

}  // namespace

Eigen::Vector3d bloch_coords(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("Bloch coordinates need a 2x2 operator");
  const cplx alpha = m(1, 0);
  return {2.0 * alpha.real(), 2.0 * alpha.imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochVector to_bloch(const DensityMatrix& rho) {
  if (rho.qubits() != 1) throw DimensionError("to_bloch: one-qubit state required");
  return BlochVector::from(bloch_coords(rho.matrix()));
}

DensityMatrix from_bloch(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-12) throw DomainError("from_bloch: point outside the Bloch ball");
  Matrix m(2, 2);
  m << 0.5 * (1.0 + b.z), cplx{0.5 * b.x, -0.5 * b.y}, cplx{0.5 * b.x, 0.5 * b.y}, 0.5 * (1.0 - b.z);
  return DensityMatrix(std::move(m));
}

Matrix rotation_unitary(double alpha, double theta, double phi) {
  const double a = wrap_two_pi(alpha);
  const double p = theta == 0.0 ? 0.0 : wrap_two_pi(phi);
  const cplx e_phi = std::polar(1.0, p);
  Vector psi(2), perp(2);
  psi << std::cos(theta / 2.0), e_phi * std::sin(theta / 2.0);
  perp << std::sin(theta / 2.0), -e_phi * std::cos(theta / 2.0);
  return psi * psi.adjoint() + std::polar(1.0, a) * (perp * perp.adjoint());
}

BlochAffine affine_of_channel(const Channel& g) {
  if (g.qubits() != 1) throw DimensionError("affine_of_channel: one-qubit channel required");
  BlochAffine aff;
  aff.offset = bloch_coords(g(Matrix::Identity(2, 2) / 2.0));
  const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
  for (int c = 0; c < 3; ++c) {
    aff.linear.col(c) = bloch_coords(g(zeta(axes[c], 1).matrix())) - aff.offset;
  }
  return aff;
}

}  // namespace qst
