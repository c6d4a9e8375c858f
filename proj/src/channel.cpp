#include "qst/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qst/errors.hpp"

namespace qst {

namespace {

inline constexpr int kMaxChannelQubits = 4;

double min_eigenvalue(const Matrix& hermitian) {
  const Matrix sym = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("Choi eigendecomposition failed");
  return es.eigenvalues().minCoeff();
}

double trace_defect(const Matrix& transfer, int dim) {
  // Row a + N*a of S holds the diagonal entry (a,a) of every image, so
  // Tr G(E_ij) = sum_a S(a + N a, i + N j).
  double worst = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      cplx tr{0.0, 0.0};
      for (int a = 0; a < dim; ++a) tr += transfer(a + dim * a, i + dim * j);
      worst = std::max(worst, std::abs(tr - cplx{i == j ? 1.0 : 0.0, 0.0}));
    }
  }
  return worst;
}

void check_qubits(int qubits) {
  if (qubits < 1 || qubits > kMaxChannelQubits) {
    throw DimensionError("channel qubit count must lie in [1,4], got " + std::to_string(qubits));
  }
}

}  // namespace

Matrix choi_from_transfer(const Matrix& transfer, int dim) {
  Matrix choi(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) choi(i * dim + a, j * dim + b) = transfer(a + dim * b, i + dim * j);
  return choi;
}

Matrix transfer_from_choi(const Matrix& choi, int dim) {
  Matrix transfer(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) transfer(a + dim * b, i + dim * j) = choi(i * dim + a, j * dim + b);
  return transfer;
}

Channel::Channel(int qubits, Matrix choi, Matrix transfer)
    : qubits_(qubits),
      choi_(std::move(choi)),
      transfer_(std::move(transfer)),
      choi_min_eig_(min_eigenvalue(choi_)),
      tp_defect_(trace_defect(transfer_, 1 << qubits)) {}

Channel Channel::from_choi(int qubits, Matrix choi) {
  check_qubits(qubits);
  const int n = 1 << qubits;
  if (choi.rows() != n * n || choi.cols() != n * n) throw DimensionError("Choi matrix has wrong shape");
  if (!choi.allFinite()) throw DomainError("Choi matrix has non-finite entries");
  Matrix transfer = transfer_from_choi(choi, n);
  return Channel(qubits, std::move(choi), std::move(transfer));
}

Channel Channel::from_transfer(int qubits, Matrix transfer) {
  check_qubits(qubits);
  const int n = 1 << qubits;
  if (transfer.rows() != n * n || transfer.cols() != n * n) throw DimensionError("transfer matrix has wrong shape");
  if (!transfer.allFinite()) throw DomainError("transfer matrix has non-finite entries");
  Matrix choi = choi_from_transfer(transfer, n);
  return Channel(qubits, std::move(choi), std::move(transfer));
}

Channel Channel::identity(int qubits) {
  check_qubits(qubits);
  const int n = 1 << qubits;
  return from_transfer(qubits, Matrix::Identity(n * n, n * n));
}

Channel Channel::zero(int qubits) {
  check_qubits(qubits);
  const int n = 1 << qubits;
  return from_transfer(qubits, Matrix::Zero(n * n, n * n));
}

Matrix Channel::operator()(const Matrix& v) const {
  const int n = dim();
  if (v.rows() != n || v.cols() != n) throw DimensionError("operand dimension does not match channel");
  // Eigen storage is column-major, so the raw buffer is vec(V).
  Matrix out(n, n);
  Eigen::Map<Vector>(out.data(), n * n).noalias() = transfer_ * Eigen::Map<const Vector>(v.data(), n * n);
  return out;
}

Channel from_unitary(const Matrix& u) {
  const int q = qubits_of(u);
  const double defect = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTol) throw DomainError("from_unitary: matrix is not unitary");
  return Channel::from_transfer(q, tensor(u.conjugate(), u));
}

Channel from_kraus(std::span<const Matrix> ops) {
  if (ops.empty()) throw DomainError("from_kraus: empty Kraus list");
  const int q = qubits_of(ops.front());
  const auto n = ops.front().rows();
  Matrix completeness = Matrix::Zero(n, n);
  Matrix transfer = Matrix::Zero(n * n, n * n);
  for (const Matrix& k : ops) {
    if (k.rows() != n || k.cols() != n) throw DimensionError("from_kraus: Kraus operators differ in shape");
    completeness += k.adjoint() * k;
    transfer += tensor(k.conjugate(), k);
  }
  if ((completeness - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kTpTol) {
    throw DomainError("from_kraus: sum of K^dagger K is not the identity");
  }
  return Channel::from_transfer(q, std::move(transfer));
}

DensityMatrix apply(const Channel& g, const DensityMatrix& rho) {
  if (g.qubits() != rho.qubits()) throw DimensionError("apply: channel and state qubit counts differ");
  Matrix out = g(rho.matrix());
  if constexpr (kValidateStates) {
    return DensityMatrix(std::move(out));
  } else {
    return DensityMatrix::unchecked(std::move(out));
  }
}

Channel compose(const Channel& g, const Channel& h) {
  if (g.qubits() != h.qubits()) throw DimensionError("compose: qubit counts differ");
  return Channel::from_transfer(g.qubits(), g.transfer() * h.transfer());
}

Channel power(const Channel& g, int k) {
  if (k < 0) throw DomainError("power: exponent must be non-negative");
  const int n = g.dim();
  Matrix result = Matrix::Identity(n * n, n * n);
  Matrix base = g.transfer();
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return Channel::from_transfer(g.qubits(), std::move(result));
}

Channel tensor_channels(const Channel& g, const Channel& h) {
  const int ng = g.dim();
  const int nh = h.dim();
  const int n = ng * nh;
  // (G (x) H)(|I><J|) = G(|i1><j1|) (x) H(|i2><j2|) with I = i1*nh + i2.
  Matrix transfer(n * n, n * n);
  Matrix eg = Matrix::Zero(ng, ng);
  Matrix eh = Matrix::Zero(nh, nh);
  for (int i1 = 0; i1 < ng; ++i1)
    for (int j1 = 0; j1 < ng; ++j1) {
      eg.setZero();
      eg(i1, j1) = 1.0;
      const Matrix gi = g(eg);
      for (int i2 = 0; i2 < nh; ++i2)
        for (int j2 = 0; j2 < nh; ++j2) {
          eh.setZero();
          eh(i2, j2) = 1.0;
          const Matrix img = tensor(gi, h(eh));
          const int col = (i1 * nh + i2) + n * (j1 * nh + j2);
          transfer.col(col) = Eigen::Map<const Vector>(img.data(), n * n);
        }
    }
  return Channel::from_transfer(g.qubits() + h.qubits(), std::move(transfer));
}

Channel combine(double a, const Channel& g, double b, const Channel& h) {
  if (g.qubits() != h.qubits()) throw DimensionError("combine: qubit counts differ");
  return Channel::from_transfer(g.qubits(), a * g.transfer() + b * h.transfer());
}

double choi_distance(const Channel& g, const Channel& h) {
  if (g.qubits() != h.qubits()) throw DimensionError("choi_distance: qubit counts differ");
  return (g.choi() - h.choi()).norm();
}

bool is_unitary_channel(const Channel& g, double tol) {
  if (!g.is_cptp()) return false;
  const Matrix sym = 0.5 * (g.choi() + g.choi().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  const double rest = ev.head(ev.size() - 1).cwiseAbs().maxCoeff();
  return std::abs(top - g.dim()) <= tol * g.dim() && rest <= tol;
}

Matrix unitary_of(const Channel& g) {
  if (!is_unitary_channel(g, 1e-8)) throw DomainError("unitary_of: channel is not unitary");
  const int n = g.dim();
  const Matrix sym = 0.5 * (g.choi() + g.choi().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const Vector top = es.eigenvectors().col(n * n - 1) * std::sqrt(es.eigenvalues()(n * n - 1));
  // J = |U>><<U| with |U>> = sum_i |i> (x) U|i>.
  Matrix u(n, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) u(a, i) = top(i * n + a);
  // Re-unitarize against rounding: polar factor via SVD.
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace qst
