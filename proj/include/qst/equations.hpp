#pragma once

// Experimental equations
//
//   Pr^v [ X_1^{e_1} o X_2^{e_2} o ... o X_t^{e_t} (|w><w|) ] = r
//
// where each X_j is a gate variable, optionally tensored with a one-qubit
// identity or with itself. The program is stored outermost-first: the last
// step acts first on |w><w|.

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "qst/channel.hpp"
#include "qst/family.hpp"
#include "qst/qstate.hpp"

namespace qst {

enum class Embedding {
  Whole,        // X on all of the equation's qubits
  LeftWithId,   // X (x) I
  RightWithId,  // I (x) X
  Pair,         // X (x) X
};

struct Step {
  int var = 0;
  Embedding embed = Embedding::Whole;
  int exp = 1;
  friend bool operator==(const Step&, const Step&) = default;
};

inline constexpr int kMaxExponent = 1'000'000;

class ExperimentalEquation {
 public:
  /// Validates embedding/arity coherence; DomainError on any violation.
  ExperimentalEquation(int qubits, int arity, std::vector<Step> program, Bitstring input, Bitstring outcome,
                       double constant);

  int qubits() const { return qubits_; }
  int arity() const { return arity_; }
  const std::vector<Step>& program() const { return program_; }
  const Bitstring& input() const { return input_; }
  const Bitstring& outcome() const { return outcome_; }
  double constant() const { return constant_; }

  /// Sum of exponents.
  int size() const;

  /// Qubit count the variable must have, or nullopt if unused here.
  std::optional<int> var_qubits(int var) const;

  friend bool operator==(const ExperimentalEquation&, const ExperimentalEquation&) = default;

 private:
  int qubits_;
  int arity_;
  std::vector<Step> program_;
  Bitstring input_;
  Bitstring outcome_;
  double constant_;
};

class EquationSet {
 public:
  explicit EquationSet(std::vector<ExperimentalEquation> equations, std::optional<Family> family = std::nullopt);

  const std::vector<ExperimentalEquation>& equations() const { return equations_; }
  int d() const { return static_cast<int>(equations_.size()); }
  int k_max() const { return k_max_; }
  int arity() const { return arity_; }
  /// Qubit count per variable (0 when no equation uses it).
  const std::vector<int>& var_qubits() const { return var_qubits_; }
  const std::optional<Family>& family() const { return family_; }

 private:
  std::vector<ExperimentalEquation> equations_;
  std::optional<Family> family_;
  int arity_ = 0;
  int k_max_ = 0;
  std::vector<int> var_qubits_;
};

inline int size_of(const ExperimentalEquation& eq) { return eq.size(); }
inline int k_max(const EquationSet& set) { return set.k_max(); }

/// DimensionError unless the tuple has the arity and qubit counts eq needs.
void check_compatible(const ExperimentalEquation& eq, std::span<const Channel> gates);

/// Exact Pr^v of the program applied to |w><w|.
double probability_term(const ExperimentalEquation& eq, std::span<const Channel> gates);

/// |probability_term - r| for every equation, in order.
std::vector<double> violations(const EquationSet& set, std::span<const Channel> gates);

/// Smallest eps for which the gates eps-satisfy the set.
double max_violation(const EquationSet& set, std::span<const Channel> gates);

/// Smallest n >= 1 with n * (a/b) pi = 0 mod 2 pi, for a reduced fraction
/// 0 < a/b <= 1.
int n_alpha(long a, long b);

/// cos^2(theta) + sin^2(theta) cos(k alpha).
double z_k(double alpha, double theta, int k);

/// The characterizing equation set of a built-in family.
EquationSet family_equations(const Family& family);

/// Rational snapping for constants: returns p/q (q <= 64) when r is within
/// 1e-12 of it, else r.
double snap_constant(double r);

std::string_view to_string(Embedding e);

nlohmann::json to_json(const ExperimentalEquation& eq);
nlohmann::json to_json(const EquationSet& set);
ExperimentalEquation equation_from_json(const nlohmann::json& j);
EquationSet equation_set_from_json(const nlohmann::json& j);

}  // namespace qst
