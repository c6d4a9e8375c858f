#include "qst/qstate.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qst/errors.hpp"

namespace qst {

Bitstring::Bitstring(std::string bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw DomainError("bitstring must be non-empty");
  for (char c : bits_) {
    if (c != '0' && c != '1') throw DomainError("bitstring has a non-binary character: '" + bits_ + "'");
  }
}

Bitstring Bitstring::from_index(std::size_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int k = width - 1; k >= 0; --k, index >>= 1) {
    if (index & 1u) s[static_cast<std::size_t>(k)] = '1';
  }
  return Bitstring(std::move(s));
}

std::size_t Bitstring::index() const {
  std::size_t idx = 0;
  for (char c : bits_) idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  return idx;
}

int qubits_of(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  const auto n = m.rows();
  int q = 0;
  while ((Eigen::Index{1} << q) < n) ++q;
  if ((Eigen::Index{1} << q) != n || q == 0) {
    throw DimensionError("matrix dimension " + std::to_string(n) + " is not 2^n with n >= 1");
  }
  return q;
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)), qubits_(qubits_of(entries_)) {
  if (qubits_ > kMaxStateQubits) throw DimensionError("states larger than 4 qubits are not supported");
  if (!entries_.allFinite()) throw DomainError("density matrix has non-finite entries");
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) throw DomainError("density matrix is not Hermitian");
  if (std::abs(entries_.trace() - cplx{1.0, 0.0}) > kTraceTol) throw DomainError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver failed on density matrix");
  if (es.eigenvalues().minCoeff() < -kPsdTol) throw DomainError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::unchecked(Matrix entries) {
  const int q = qubits_of(entries);
  return DensityMatrix(std::move(entries), q);
}

DensityMatrix DensityMatrix::basis(const Bitstring& bits) {
  const Eigen::Index n = Eigen::Index{1} << bits.size();
  Matrix m = Matrix::Zero(n, n);
  const auto i = static_cast<Eigen::Index>(bits.index());
  m(i, i) = 1.0;
  return DensityMatrix(std::move(m), bits.size());
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  const Eigen::Index n = Eigen::Index{1} << qubits;
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
  const double norm = ket.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw DomainError("ket is not normalized");
  Matrix m = ket * ket.adjoint();
  // Exact Hermitian symmetry.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

DensityMatrix rho_of(double p, cplx alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("rho_of: p must lie in [0,1]");
  if (std::norm(alpha) > p * (1.0 - p) + 1e-12) {
    throw DomainError("rho_of: |alpha|^2 exceeds p(1-p), not a state");
  }
  Matrix m(2, 2);
  m << p, std::conj(alpha), alpha, 1.0 - p;
  return DensityMatrix(std::move(m));
}

double trace_norm(const Matrix& v) {
  if (v.rows() != v.cols()) throw DimensionError("trace_norm: operand must be square");
  if (!v.allFinite()) throw NumericError("trace_norm: non-finite operand");
  Eigen::JacobiSVD<Matrix> svd(v);
  const double s = svd.singularValues().sum();
  if (!std::isfinite(s)) throw NumericError("trace_norm: SVD did not converge");
  return s;
}

double trace_norm_2x2(const Matrix& v) {
  const cplx det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
  return std::sqrt(v.squaredNorm() + 2.0 * std::abs(det));
}

Matrix tensor(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.qubits() + b.qubits() > kMaxStateQubits) throw DimensionError("tensor: result exceeds 4 qubits");
  return DensityMatrix::unchecked(tensor(a.matrix(), b.matrix()));
}

double measure_prob(const DensityMatrix& rho, const Bitstring& v) {
  if (v.size() != rho.qubits()) throw DimensionError("measure_prob: bitstring length differs from qubit count");
  const auto i = static_cast<Eigen::Index>(v.index());
  return rho.matrix()(i, i).real();
}

DensityMatrix zeta(Axis axis, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("zeta: sign must be +1 or -1");
  const double s = sign;
  switch (axis) {
    case Axis::X: return rho_of(0.5, cplx{0.5 * s, 0.0});
    case Axis::Y: return rho_of(0.5, cplx{0.0, 0.5 * s});
    case Axis::Z: return rho_of(sign > 0 ? 1.0 : 0.0, cplx{0.0, 0.0});
  }
  throw DomainError("zeta: unknown axis");
}

DensityMatrix epr_state() {
  Vector ket = Vector::Zero(4);
  ket(0) = ket(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(ket);
}

double epr_decomposition_residual() {
  auto pp = [](Axis a, int s) { return tensor(zeta(a, s).matrix(), zeta(a, s).matrix()); };
  const Matrix combo = 0.5 * (pp(Axis::X, 1) + pp(Axis::X, -1) + pp(Axis::Z, 1) + pp(Axis::Z, -1)) -
                       0.5 * (pp(Axis::Y, 1) + pp(Axis::Y, -1));
  return trace_norm(combo - epr_state().matrix());
}

}  // namespace qst
