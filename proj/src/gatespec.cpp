#include "qst/gatespec.hpp"

#include <fstream>

#include "qst/angle.hpp"
#include "qst/errors.hpp"
#include "qst/gates.hpp"
#include "qst/noise.hpp"

namespace qst {

using nlohmann::json;

namespace {

double angle_param(const json& params, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!params.contains(key)) {
    if (fallback) return *fallback;
    throw DomainError(std::string("gate spec: missing parameter '") + key + "'");
  }
  const json& v = params.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>()).radians;
  throw DomainError(std::string("gate spec: parameter '") + key + "' must be a number or angle string");
}

int int_param(const json& params, const char* key, int fallback) {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<int>();
}

Channel base_gate(const std::string& kind, const json& params) {
  if (kind == "hadamard") return gates::hadamard(angle_param(params, "phi", 0.0));
  if (kind == "not") return gates::negation(angle_param(params, "phi", 0.0));
  if (kind == "cnot") return gates::cnot(angle_param(params, "phi", 0.0));
  if (kind == "phase") return gates::phase(angle_param(params, "alpha"));
  if (kind == "rotation") {
    return gates::rotation(angle_param(params, "alpha"), angle_param(params, "theta"), angle_param(params, "phi", 0.0));
  }
  if (kind == "measurement") return gates::measurement(int_param(params, "qubits", 1));
  if (kind == "identity") return Channel::identity(int_param(params, "qubits", 1));
  if (kind == "swap") return gates::swap();
  if (kind == "transpose") return gates::transpose();
  if (kind == "unitary") return from_unitary(matrix_from_json(params.at("matrix")));
  if (kind == "kraus") {
    std::vector<Matrix> ops;
    for (const auto& op : params.at("operators")) ops.push_back(matrix_from_json(op));
    return from_kraus(ops);
  }
  throw DomainError("gate spec: unknown kind '" + kind + "'");
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("gate spec: matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DomainError("gate spec: matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row.at(static_cast<std::size_t>(c));
      if (e.is_number()) {
        m(r, c) = cplx{e.get<double>(), 0.0};
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = cplx{e.at(0).get<double>(), e.at(1).get<double>()};
      } else {
        throw DomainError("gate spec: matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Channel gate_from_json(const json& spec) {
  try {
    if (!spec.is_object()) throw DomainError("gate spec must be a JSON object");
    const std::string kind = spec.at("kind").get<std::string>();
    const json params = spec.value("params", json::object());
    Channel g = base_gate(kind, params);
    if (spec.contains("noise")) {
      for (const auto& n : spec.at("noise")) {
        const std::string name = n.at("kind").get<std::string>();
        const auto k = parse_noise_kind(name);
        if (!k) throw DomainError("gate spec: unknown noise kind '" + name + "'");
        g = apply_noise(g, NoiseModel{*k, n.at("strength").get<double>()});
      }
    }
    return g;
  } catch (const json::exception& e) {
    throw DomainError(std::string("gate spec: ") + e.what());
  }
}

Channel load_gate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open gate spec '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("gate spec '" + path + "': " + e.what());
  }
  return gate_from_json(j);
}

}  // namespace qst
