#pragma once

// Superoperators on n qubits.
//
// Canonical storage is the Choi matrix J = sum_ij |i><j| (x) G(|i><j|)
// (input factor left). The column-stacking transfer matrix S, with
// vec(G(V)) = S vec(V), is kept alongside it for composition and
// application. A Channel need not be CP or TP; the verdicts are computed
// once at construction and exposed as flags.

#include <span>
#include <vector>

#include "qst/qstate.hpp"

namespace qst {

inline constexpr double kCpTol = 1e-10;
inline constexpr double kTpTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kChannelEqualTol = 1e-10;

class Channel {
 public:
  static Channel from_choi(int qubits, Matrix choi);
  static Channel from_transfer(int qubits, Matrix transfer);
  static Channel identity(int qubits);
  /// The zero map; its distance to any CPSO is that CPSO's norm.
  static Channel zero(int qubits);

  int qubits() const { return qubits_; }
  int dim() const { return 1 << qubits_; }
  const Matrix& choi() const { return choi_; }
  const Matrix& transfer() const { return transfer_; }

  /// Linear action on an arbitrary dim x dim operator.
  Matrix operator()(const Matrix& v) const;

  double choi_min_eigenvalue() const { return choi_min_eig_; }
  bool is_cp() const { return choi_min_eig_ >= -kCpTol; }
  /// max |Tr G(|i><j|) - delta_ij|.
  double tp_defect() const { return tp_defect_; }
  bool is_tp() const { return tp_defect_ <= kTpTol; }
  bool is_cptp() const { return is_cp() && is_tp(); }

 private:
  Channel(int qubits, Matrix choi, Matrix transfer);
  int qubits_;
  Matrix choi_;
  Matrix transfer_;
  double choi_min_eig_;
  double tp_defect_;
};

/// Reshuffles between the two representations (same dimension N^2).
Matrix choi_from_transfer(const Matrix& transfer, int dim);
Matrix transfer_from_choi(const Matrix& choi, int dim);

/// rho -> U rho U^dagger. DomainError if U is not unitary within 1e-10.
Channel from_unitary(const Matrix& u);

/// rho -> sum_k K rho K^dagger. DomainError unless sum K^dagger K = I.
Channel from_kraus(std::span<const Matrix> ops);

DensityMatrix apply(const Channel& g, const DensityMatrix& rho);

/// g o h: h acts first.
Channel compose(const Channel& g, const Channel& h);
Channel power(const Channel& g, int k);
Channel tensor_channels(const Channel& g, const Channel& h);

/// Linear combination a*g + b*h (difference maps, convex mixtures).
Channel combine(double a, const Channel& g, double b, const Channel& h);

/// Frobenius distance between Choi matrices.
double choi_distance(const Channel& g, const Channel& h);
inline bool approx_equal(const Channel& g, const Channel& h, double tol = kChannelEqualTol) {
  return choi_distance(g, h) <= tol;
}

/// Largest Choi eigenvalue equals N and all others vanish: the numeric
/// signature of a unitary channel.
bool is_unitary_channel(const Channel& g, double tol = 1e-10);

/// Recovers U (up to global phase) from a unitary channel's rank-one Choi
/// matrix. DomainError if g is not unitary.
Matrix unitary_of(const Channel& g);

}  // namespace qst
