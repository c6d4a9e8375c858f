#pragma once

// Dense complex-matrix kernel for n-qubit states (n <= 4).
//
// Basis convention: |i_1 ... i_n> = |i_1> (x) ... (x) |i_n>, the leftmost
// character of a bitstring is qubit 1 and the most significant index bit.

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace qst {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

#ifndef QST_VALIDATE_STATES
#define QST_VALIDATE_STATES 1
#endif
inline constexpr bool kValidateStates = QST_VALIDATE_STATES != 0;

inline constexpr int kMaxStateQubits = 4;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Computational-basis label; leftmost character is qubit 1.
class Bitstring {
 public:
  explicit Bitstring(std::string bits);
  static Bitstring from_index(std::size_t index, int width);

  int size() const { return static_cast<int>(bits_.size()); }
  std::size_t index() const;
  const std::string& str() const { return bits_; }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  std::string bits_;
};

/// Hermitian, PSD, unit-trace matrix of dimension 2^n.
class DensityMatrix {
 public:
  /// Validates every invariant; throws DomainError / DimensionError.
  explicit DensityMatrix(Matrix entries);

  /// Wraps a matrix already known to be a state (channel outputs in
  /// release scans). No checks.
  static DensityMatrix unchecked(Matrix entries);

  static DensityMatrix basis(const Bitstring& bits);
  static DensityMatrix maximally_mixed(int qubits);
  static DensityMatrix pure(const Vector& ket);

  int qubits() const { return qubits_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// Tr(rho^2).
  double purity() const;
  bool is_pure(double tol = 1e-10) const { return std::abs(purity() - 1.0) <= tol; }

 private:
  DensityMatrix(Matrix entries, int qubits) : entries_(std::move(entries)), qubits_(qubits) {}
  Matrix entries_;
  int qubits_;
};

/// One-qubit state p|0><0| + (1-p)|1><1| + alpha|1><0| + conj(alpha)|0><1|.
DensityMatrix rho_of(double p, cplx alpha);

/// Sum of singular values. Throws NumericError on non-finite input/output.
double trace_norm(const Matrix& v);

/// Closed form for 2x2 operands: sqrt(||V||_F^2 + 2|det V|).
double trace_norm_2x2(const Matrix& v);

/// Kronecker product A (x) B.
Matrix tensor(const Matrix& a, const Matrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// <v|rho|v>.
double measure_prob(const DensityMatrix& rho, const Bitstring& v);

/// Number of qubits for a 2^n x 2^n matrix; DimensionError otherwise.
int qubits_of(const Matrix& m);

/// The six axis states of the Bloch sphere.
enum class Axis { X, Y, Z };
DensityMatrix zeta(Axis axis, int sign);

/// |Psi+><Psi+| with |Psi+> = (|00> + |11>)/sqrt(2).
DensityMatrix epr_state();

/// Trace-norm distance between Psi+ and its expansion in zeta (x) zeta
/// products. Zero up to rounding.
double epr_decomposition_residual();

}  // namespace qst
