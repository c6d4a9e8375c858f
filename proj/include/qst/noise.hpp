#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qst/channel.hpp"

namespace qst {

enum class NoiseKind { Depolarize, Overrotate, PhaseDrift, AmplitudeDamp };

/// Strength ranges: depolarize and amplitude_damp in [0,1]; overrotate and
/// phase_drift are angles in radians, |strength| <= pi.
struct NoiseModel {
  NoiseKind kind;
  double strength;
};

std::string_view to_string(NoiseKind kind);
std::optional<NoiseKind> parse_noise_kind(std::string_view name);

/// Depolarizing channel rho -> (1-lambda) rho + lambda Tr(rho) I/N.
Channel depolarizing(int qubits, double lambda);

/// Noisy version of g:
///  - depolarize:     D_lambda o g
///  - overrotate:     one-qubit unitary g gets its rotation angle pushed
///                    further by delta about its own axis; anything else is
///                    followed by a z phase(delta) on every qubit
///  - phase_drift:    P o g o P^-1 with P = phase(delta) on every qubit
///  - amplitude_damp: per-qubit amplitude damping after g
Channel apply_noise(const Channel& g, NoiseModel m);

}  // namespace qst
