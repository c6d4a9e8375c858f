#include "qst/equations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "qst/errors.hpp"

namespace qst {

using nlohmann::json;

ExperimentalEquation::ExperimentalEquation(int qubits, int arity, std::vector<Step> program, Bitstring input,
                                           Bitstring outcome, double constant)
    : qubits_(qubits),
      arity_(arity),
      program_(std::move(program)),
      input_(std::move(input)),
      outcome_(std::move(outcome)),
      constant_(constant) {
  if (qubits_ < 1 || qubits_ > kMaxStateQubits) throw DomainError("equation qubit count must lie in [1,4]");
  if (arity_ < 1) throw DomainError("equation arity must be at least 1");
  if (input_.size() != qubits_ || outcome_.size() != qubits_) {
    throw DomainError("equation bitstrings must have one character per qubit");
  }
  if (!(constant_ >= 0.0 && constant_ <= 1.0)) throw DomainError("equation constant must lie in [0,1]");
  std::map<int, int> seen;
  for (const Step& s : program_) {
    if (s.var < 0 || s.var >= arity_) throw DomainError("equation step refers to a variable outside the arity");
    if (s.exp < 0 || s.exp > kMaxExponent) throw DomainError("equation exponent must lie in [0, 10^6]");
    if (s.embed != Embedding::Whole && qubits_ != 2) {
      throw DomainError("identity/pair embeddings need a two-qubit equation");
    }
    const int q = s.embed == Embedding::Whole ? qubits_ : 1;
    auto [it, inserted] = seen.emplace(s.var, q);
    if (!inserted && it->second != q) throw DomainError("variable used with inconsistent qubit counts");
  }
}

int ExperimentalEquation::size() const {
  int total = 0;
  for (const Step& s : program_) total += s.exp;
  return total;
}

std::optional<int> ExperimentalEquation::var_qubits(int var) const {
  for (const Step& s : program_) {
    if (s.var == var) return s.embed == Embedding::Whole ? qubits_ : 1;
  }
  return std::nullopt;
}

EquationSet::EquationSet(std::vector<ExperimentalEquation> equations, std::optional<Family> family)
    : equations_(std::move(equations)), family_(std::move(family)) {
  if (equations_.empty()) throw DomainError("an equation set needs at least one equation");
  arity_ = equations_.front().arity();
  var_qubits_.assign(static_cast<std::size_t>(arity_), 0);
  for (const auto& eq : equations_) {
    if (eq.arity() != arity_) throw DomainError("equations in a set must share the same arity");
    k_max_ = std::max(k_max_, eq.size());
    for (int v = 0; v < arity_; ++v) {
      const auto q = eq.var_qubits(v);
      if (!q) continue;
      int& slot = var_qubits_[static_cast<std::size_t>(v)];
      if (slot != 0 && slot != *q) throw DomainError("variable has inconsistent qubit counts across the set");
      slot = *q;
    }
  }
}

void check_compatible(const ExperimentalEquation& eq, std::span<const Channel> gates) {
  if (static_cast<int>(gates.size()) != eq.arity()) {
    throw DimensionError("equation has arity " + std::to_string(eq.arity()) + " but " + std::to_string(gates.size()) +
                         " gates were supplied");
  }
  for (int v = 0; v < eq.arity(); ++v) {
    const auto q = eq.var_qubits(v);
    if (q && gates[static_cast<std::size_t>(v)].qubits() != *q) {
      throw DimensionError("gate " + std::to_string(v) + " acts on " +
                           std::to_string(gates[static_cast<std::size_t>(v)].qubits()) + " qubit(s), equation needs " +
                           std::to_string(*q));
    }
  }
}

namespace {

Channel embedded(const Channel& g, Embedding e) {
  switch (e) {
    case Embedding::Whole: return g;
    case Embedding::LeftWithId: return tensor_channels(g, Channel::identity(1));
    case Embedding::RightWithId: return tensor_channels(Channel::identity(1), g);
    case Embedding::Pair: return tensor_channels(g, g);
  }
  throw DomainError("unknown embedding");
}

}  // namespace

double probability_term(const ExperimentalEquation& eq, std::span<const Channel> gates) {
  check_compatible(eq, gates);
  const int n = 1 << eq.qubits();
  Matrix rho = Matrix::Zero(n, n);
  const auto w = static_cast<Eigen::Index>(eq.input().index());
  rho(w, w) = 1.0;
  std::map<std::pair<int, Embedding>, Channel> cache;
  Vector state = Eigen::Map<const Vector>(rho.data(), n * n);
  for (auto it = eq.program().rbegin(); it != eq.program().rend(); ++it) {
    if (it->exp == 0) continue;
    const auto key = std::make_pair(it->var, it->embed);
    auto found = cache.find(key);
    if (found == cache.end()) {
      found = cache.emplace(key, embedded(gates[static_cast<std::size_t>(it->var)], it->embed)).first;
    }
    const Matrix& s = found->second.transfer();
    if (it->exp <= 32) {
      for (int e = 0; e < it->exp; ++e) state = s * state;
    } else {
      state = power(found->second, it->exp).transfer() * state;
    }
  }
  const auto v = static_cast<Eigen::Index>(eq.outcome().index());
  return state(v + n * v).real();
}

std::vector<double> violations(const EquationSet& set, std::span<const Channel> gates) {
  std::vector<double> out;
  out.reserve(set.equations().size());
  for (const auto& eq : set.equations()) out.push_back(std::abs(probability_term(eq, gates) - eq.constant()));
  return out;
}

double max_violation(const EquationSet& set, std::span<const Channel> gates) {
  const auto v = violations(set, gates);
  return *std::max_element(v.begin(), v.end());
}

int n_alpha(long a, long b) {
  if (b < 1 || a <= 0 || a > b || std::gcd(a, b) != 1) {
    throw DomainError("n_alpha: need a reduced fraction a/b with 0 < a/b <= 1");
  }
  return static_cast<int>(a % 2 == 0 ? b : 2 * b);
}

double z_k(double alpha, double theta, int k) {
  if (k < 0) throw DomainError("z_k: k must be non-negative");
  const double c = std::cos(theta), s = std::sin(theta);
  return c * c + s * s * std::cos(k * alpha);
}

double snap_constant(double r) {
  for (int q = 1; q <= 64; ++q) {
    const double p = std::round(r * q);
    if (std::abs(p / q - r) < 1e-12) return p / q;
  }
  return r;
}

namespace {

ExperimentalEquation one_qubit(int arity, std::vector<Step> program, const char* input, double r) {
  return ExperimentalEquation(1, arity, std::move(program), Bitstring(input), Bitstring("0"), snap_constant(r));
}

ExperimentalEquation two_qubit(int arity, std::vector<Step> program, const char* input, const char* outcome) {
  return ExperimentalEquation(2, arity, std::move(program), Bitstring(input), Bitstring(outcome), 1.0);
}

// Equations for R(alpha, theta) on variable `var`:
// Pr0[G^k(|0><0|)] = 1/2 + z_k/2 for k = 1..n_alpha, Pr0[G^n_alpha(|1><1|)] = 0.
std::vector<ExperimentalEquation> rotation_equations(int arity, int var, PiFraction alpha, double theta) {
  const int n = n_alpha(alpha.num, alpha.den);
  std::vector<ExperimentalEquation> eqs;
  for (int k = 1; k <= n; ++k) {
    eqs.push_back(one_qubit(arity, {{var, Embedding::Whole, k}}, "0", 0.5 + 0.5 * z_k(alpha.radians(), theta, k)));
  }
  eqs.push_back(one_qubit(arity, {{var, Embedding::Whole, n}}, "1", 0.0));
  return eqs;
}

std::vector<ExperimentalEquation> hadamard_equations(int arity, int var) {
  return rotation_equations(arity, var, PiFraction{1, 1}, std::numbers::pi / 4);
}

// Two-variable sets with F = var 0, G = var 1.
std::vector<ExperimentalEquation> hadamard_not_equations() {
  auto eqs = hadamard_equations(2, 0);
  eqs.push_back(one_qubit(2, {{1, Embedding::Whole, 1}}, "0", 0.0));
  eqs.push_back(one_qubit(2, {{1, Embedding::Whole, 1}}, "1", 1.0));
  eqs.push_back(one_qubit(2, {{0, Embedding::Whole, 1}, {1, Embedding::Whole, 2}, {0, Embedding::Whole, 1}}, "0", 1.0));
  eqs.push_back(one_qubit(2, {{0, Embedding::Whole, 1}, {1, Embedding::Whole, 1}, {0, Embedding::Whole, 1}}, "0", 1.0));
  return eqs;
}

std::vector<ExperimentalEquation> hadamard_phase_equations(int arity, int f, int g, PiFraction alpha) {
  const int n = n_alpha(alpha.num, alpha.den);
  auto eqs = hadamard_equations(arity, f);
  eqs.push_back(one_qubit(arity, {{g, Embedding::Whole, 1}}, "0", 1.0));
  eqs.push_back(one_qubit(arity, {{g, Embedding::Whole, 1}}, "1", 0.0));
  eqs.push_back(one_qubit(arity, {{f, Embedding::Whole, 1}, {g, Embedding::Whole, n}, {f, Embedding::Whole, 1}}, "0", 1.0));
  eqs.push_back(one_qubit(arity, {{f, Embedding::Whole, 1}, {g, Embedding::Whole, 1}, {f, Embedding::Whole, 1}}, "0",
                          0.5 + 0.5 * std::cos(alpha.radians())));
  return eqs;
}

std::vector<ExperimentalEquation> hadamard_cnot_equations(int arity, int f, int g) {
  auto eqs = hadamard_equations(arity, f);
  // c-NOT truth table.
  eqs.push_back(two_qubit(arity, {{g, Embedding::Whole, 1}}, "00", "00"));
  eqs.push_back(two_qubit(arity, {{g, Embedding::Whole, 1}}, "01", "01"));
  eqs.push_back(two_qubit(arity, {{g, Embedding::Whole, 1}}, "10", "11"));
  eqs.push_back(two_qubit(arity, {{g, Embedding::Whole, 1}}, "11", "10"));
  const std::vector<Step> right{{f, Embedding::RightWithId, 1}, {g, Embedding::Whole, 1}, {f, Embedding::RightWithId, 1}};
  eqs.push_back(two_qubit(arity, right, "00", "00"));
  eqs.push_back(two_qubit(arity, right, "10", "10"));
  const std::vector<Step> left{{f, Embedding::LeftWithId, 1}, {g, Embedding::Whole, 2}, {f, Embedding::LeftWithId, 1}};
  eqs.push_back(two_qubit(arity, left, "00", "00"));
  eqs.push_back(two_qubit(arity, left, "01", "01"));
  eqs.push_back(two_qubit(arity, {{f, Embedding::Pair, 1}, {g, Embedding::Whole, 1}, {f, Embedding::Pair, 1}}, "00", "00"));
  return eqs;
}

}  // namespace

EquationSet family_equations(const Family& family) {
  switch (family.id()) {
    case FamilyId::RAlphaTheta:
      return EquationSet(rotation_equations(1, 0, *family.alpha(), *family.theta()), family);
    case FamilyId::Hadamard:
      return EquationSet(hadamard_equations(1, 0), family);
    case FamilyId::HadamardNot:
      return EquationSet(hadamard_not_equations(), family);
    case FamilyId::HadamardPhase:
      return EquationSet(hadamard_phase_equations(2, 0, 1, *family.alpha()), family);
    case FamilyId::HadamardCnot:
      return EquationSet(hadamard_cnot_equations(2, 0, 1), family);
    case FamilyId::HadamardPhaseCnot: {
      // (F, R, C): the H x R_{+-pi/4} set on (F, R) joined with the
      // (H, c-NOT) set on (F, C); the shared F equations appear once.
      auto eqs = hadamard_phase_equations(3, 0, 1, *family.alpha());
      for (auto& eq : hadamard_cnot_equations(3, 0, 2)) {
        if (std::find(eqs.begin(), eqs.end(), eq) == eqs.end()) eqs.push_back(std::move(eq));
      }
      return EquationSet(std::move(eqs), family);
    }
  }
  throw DomainError("unknown family");
}

std::string_view to_string(Embedding e) {
  switch (e) {
    case Embedding::Whole: return "whole";
    case Embedding::LeftWithId: return "left";
    case Embedding::RightWithId: return "right";
    case Embedding::Pair: return "pair";
  }
  return "unknown";
}

namespace {

Embedding parse_embedding(const std::string& s) {
  if (s == "whole") return Embedding::Whole;
  if (s == "left") return Embedding::LeftWithId;
  if (s == "right") return Embedding::RightWithId;
  if (s == "pair") return Embedding::Pair;
  throw DomainError("unknown embedding '" + s + "'");
}

}  // namespace

json to_json(const ExperimentalEquation& eq) {
  json program = json::array();
  for (const Step& s : eq.program()) program.push_back({{"var", s.var}, {"embed", to_string(s.embed)}, {"exp", s.exp}});
  return {{"n", eq.qubits()},
          {"arity", eq.arity()},
          {"program", std::move(program)},
          {"w", eq.input().str()},
          {"v", eq.outcome().str()},
          {"r", eq.constant()}};
}

json to_json(const EquationSet& set) {
  json eqs = json::array();
  for (const auto& eq : set.equations()) eqs.push_back(to_json(eq));
  json fam = nullptr;
  if (set.family()) {
    fam = {{"name", set.family()->name()}};
    if (set.family()->alpha()) fam["alpha"] = set.family()->alpha()->str();
    if (set.family()->theta()) fam["theta"] = *set.family()->theta();
  }
  return {{"family", std::move(fam)}, {"d", set.d()}, {"k_max", set.k_max()}, {"equations", std::move(eqs)}};
}

ExperimentalEquation equation_from_json(const json& j) {
  try {
    std::vector<Step> program;
    for (const auto& s : j.at("program")) {
      program.push_back(Step{s.at("var").get<int>(), parse_embedding(s.at("embed").get<std::string>()),
                             s.at("exp").get<int>()});
    }
    return ExperimentalEquation(j.at("n").get<int>(), j.at("arity").get<int>(), std::move(program),
                                Bitstring(j.at("w").get<std::string>()), Bitstring(j.at("v").get<std::string>()),
                                j.at("r").get<double>());
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed equation JSON: ") + e.what());
  }
}

EquationSet equation_set_from_json(const json& j) {
  try {
    std::vector<ExperimentalEquation> eqs;
    for (const auto& e : j.at("equations")) eqs.push_back(equation_from_json(e));
    return EquationSet(std::move(eqs));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed equation-set JSON: ") + e.what());
  }
}

}  // namespace qst
