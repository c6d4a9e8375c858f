#pragma once

// Gate-spec JSON:
//   {"kind": "hadamard" | "not" | "rotation" | "phase" | "cnot" |
//            "measurement" | "unitary" | "kraus" | "identity" | "swap" | "transpose",
//    "params": {...},
//    "noise": [{"kind": "depolarize", "strength": 0.01}, ...]}
//
// params by kind: hadamard/not/cnot {"phi"}; rotation {"alpha", "theta",
// "phi"}; phase {"alpha"}; measurement/identity {"qubits"}; unitary
// {"matrix"}; kraus {"operators": [matrix, ...]}. Angles are numbers or
// angle strings ("pi/4", "2/3pi"). Matrices are row lists of [re, im].
// Noise is applied in list order.

#include <string>

#include <json.hpp>

#include "qst/channel.hpp"

namespace qst {

Channel gate_from_json(const nlohmann::json& spec);

/// Reads and parses a gate-spec file. DomainError on I/O or syntax errors.
Channel load_gate(const std::string& path);

Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace qst
