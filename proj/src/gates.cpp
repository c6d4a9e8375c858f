#include "qst/gates.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qst/bloch.hpp"
#include "qst/errors.hpp"

namespace qst::gates {

Matrix hadamard_unitary(double phi) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix u(2, 2);
  u << s, s * std::polar(1.0, -phi), s * std::polar(1.0, phi), -s;
  return u;
}

Matrix not_unitary(double phi) {
  Matrix u(2, 2);
  u << 0.0, std::polar(1.0, -phi), std::polar(1.0, phi), 0.0;
  return u;
}

Matrix phase_unitary(double alpha) {
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, alpha);
  return u;
}

Matrix cnot_unitary(double phi) {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return tensor(p0, Matrix::Identity(2, 2)) + tensor(p1, not_unitary(phi));
}

Channel hadamard(double phi) { return from_unitary(hadamard_unitary(phi)); }
Channel negation(double phi) { return from_unitary(not_unitary(phi)); }
Channel rotation(double alpha, double theta, double phi) { return from_unitary(rotation_unitary(alpha, theta, phi)); }
Channel phase(double alpha) { return from_unitary(phase_unitary(alpha)); }
Channel cnot(double phi) { return from_unitary(cnot_unitary(phi)); }

Channel measurement(int qubits) {
  if (qubits < 1 || qubits > 4) throw DomainError("measurement: qubit count must lie in [1,4]");
  const int n = 1 << qubits;
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix p = Matrix::Zero(n, n);
    p(i, i) = 1.0;
    ops.push_back(std::move(p));
  }
  return from_kraus(ops);
}

Channel transpose() {
  Matrix transfer = Matrix::Zero(4, 4);
  // vec index i + 2j -> j + 2i.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) transfer(j + 2 * i, i + 2 * j) = 1.0;
  return Channel::from_transfer(1, std::move(transfer));
}

Channel swap() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = u(1, 2) = u(2, 1) = u(3, 3) = 1.0;
  return from_unitary(u);
}

Channel standard_gate(std::string_view label, std::span<const double> params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw DomainError("gate '" + std::string(label) + "' takes " + std::to_string(k) + " parameter(s)");
    }
  };
  if (label == "hadamard") return need(1), hadamard(params[0]);
  if (label == "not") return need(1), negation(params[0]);
  if (label == "rotation") return need(3), rotation(params[0], params[1], params[2]);
  if (label == "phase") return need(1), phase(params[0]);
  if (label == "cnot") return need(1), cnot(params[0]);
  if (label == "measurement") {
    need(1);
    const double n = params[0];
    if (n != std::floor(n)) throw DomainError("measurement: qubit count must be an integer");
    return measurement(static_cast<int>(n));
  }
  if (label == "transpose") return need(0), transpose();
  if (label == "swap") return need(0), swap();
  throw DomainError("unknown gate label '" + std::string(label) + "'");
}

}  // namespace qst::gates
