#pragma once

// Standard gate constructors. Phase-parametrized gates act in the basis
// (|0>, e^{i phi}|1>).

#include <span>
#include <string_view>

#include "qst/channel.hpp"

namespace qst::gates {

Matrix hadamard_unitary(double phi);
Matrix not_unitary(double phi);
Matrix phase_unitary(double alpha);
/// |0>|psi> -> |0>|psi>, |1>|psi> -> |1> not_phi|psi>; qubit 1 controls.
Matrix cnot_unitary(double phi);

Channel hadamard(double phi);
Channel negation(double phi);
Channel rotation(double alpha, double theta, double phi);
Channel phase(double alpha);
Channel cnot(double phi);
/// Von Neumann measurement in the computational basis.
Channel measurement(int qubits);
/// V -> V^T. Positive but not completely positive.
Channel transpose();
Channel swap();

/// Dispatch by label: hadamard(phi) | not(phi) | rotation(alpha,theta,phi)
/// | phase(alpha) | cnot(phi) | measurement(n) | transpose | swap.
Channel standard_gate(std::string_view label, std::span<const double> params);

}  // namespace qst::gates
