#pragma once

// Gate families characterized by experimental equations, and the
// induced distance from a gate tuple to a family.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qst/channel.hpp"
#include "qst/supnorm.hpp"

namespace qst {

/// alpha = (num/den) * pi, kept exact so n_alpha is computed from integers.
struct PiFraction {
  long num = 1;
  long den = 1;

  double radians() const;
  std::string str() const;
  friend bool operator==(const PiFraction&, const PiFraction&) = default;
};

enum class FamilyId {
  RAlphaTheta,        // {R_{+-alpha, theta, phi}}
  Hadamard,           // {H_phi}
  HadamardNot,        // {(H_phi, not_phi)}
  HadamardPhase,      // H x {R_{+-alpha}}
  HadamardCnot,       // {(H_phi, c-NOT_phi)}
  HadamardPhaseCnot,  // {(H_phi, R_{s pi/4}, c-NOT_phi)}
};

class Family {
 public:
  static Family r_alpha_theta(PiFraction alpha, double theta);
  static Family hadamard();
  static Family hadamard_not();
  static Family hadamard_phase(PiFraction alpha);
  static Family hadamard_cnot();
  static Family hadamard_phase_cnot();

  /// CLI names: r-alpha-theta, hadamard, hadamard-not, hadamard-phase,
  /// hadamard-cnot, hadamard-phase-cnot.
  static Family from_name(std::string_view name, std::optional<PiFraction> alpha, std::optional<double> theta);

  FamilyId id() const { return id_; }
  std::string name() const;
  int arity() const;
  /// Qubit count of each tuple component.
  std::vector<int> gate_qubits() const;
  /// Whether members come in +-alpha pairs that the equations cannot tell apart.
  bool has_sign() const;
  std::optional<PiFraction> alpha() const { return alpha_; }
  std::optional<double> theta() const { return theta_; }

  std::vector<Channel> member(double phi, int sign = 1) const;

 private:
  Family(FamilyId id, std::optional<PiFraction> alpha, std::optional<double> theta)
      : id_(id), alpha_(alpha), theta_(theta) {}
  FamilyId id_;
  std::optional<PiFraction> alpha_;
  std::optional<double> theta_;
};

struct FamilyDistanceOptions {
  int grid = 256;
  /// Golden-section bracket width at which refinement stops.
  double phi_tol = 1e-7;
  /// Cheap multistart used on the coarse phi grid.
  SupNormOptions coarse{.starts = 6, .simplex_tol = 1e-5, .max_iterations = 4000, .warm_starts = {}};
  /// Used inside golden-section refinement (warm-started from the last point).
  SupNormOptions refine{.starts = 8, .simplex_tol = 1e-8, .warm_starts = {}};
  /// Used for the reported value at the final phi.
  SupNormOptions fine{};
};

struct FamilyDistance {
  double distance = 0.0;
  double phi = 0.0;
  int sign = 1;
  bool converged = true;
};

/// min over (phi, sign) of max_i ||G_i - F_i(phi, sign)||_inf.
FamilyDistance dist_to_family(std::span<const Channel> gates, const Family& family,
                              const FamilyDistanceOptions& opts = {});
FamilyDistance dist_to_family_serial(std::span<const Channel> gates, const Family& family,
                                     const FamilyDistanceOptions& opts = {});

}  // namespace qst
