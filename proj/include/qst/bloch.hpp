#pragma once

// One-qubit Bloch-ball picture: states as points of the unit ball and
// channels as affine maps of R^3.

#include <Eigen/Dense>

#include "qst/channel.hpp"
#include "qst/qstate.hpp"

namespace qst {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static BlochVector from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
  double norm() const { return vec().norm(); }
};

struct BlochAffine {
  Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();

  BlochVector operator()(const BlochVector& b) const { return BlochVector::from(linear * b.vec() + offset); }
};

/// (2 Re alpha, 2 Im alpha, 2p - 1) for rho(p, alpha).
BlochVector to_bloch(const DensityMatrix& rho);

/// Inverse of to_bloch; DomainError if the point lies outside the ball.
DensityMatrix from_bloch(const BlochVector& b);

/// Bloch coordinates of any 2x2 operator via the same linear formula
/// (no state checks). Used on images of non-physical maps.
Eigen::Vector3d bloch_coords(const Matrix& m);

/// Unitary fixing |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and
/// multiplying |psi_perp> by e^{i alpha}. Angles are reduced modulo 2 pi;
/// phi is set to 0 when theta = 0 so equal channels have equal matrices.
Matrix rotation_unitary(double alpha, double theta, double phi);

/// Affine map of a one-qubit superoperator, reconstructed from the images
/// of zeta_x+, zeta_y+, zeta_z+ and I/2.
BlochAffine affine_of_channel(const Channel& g);

}  // namespace qst
