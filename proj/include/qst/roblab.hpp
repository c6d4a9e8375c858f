#pragma once

// Robustness laboratory: noise scans against a family, the explicit
// one-qubit bounds (8 eps on the six axis states, 241 eps on two
// orthogonal axes), power-law fits of dist against eps, and a numeric
// replay of the Hadamard robustness argument.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qst/bloch.hpp"
#include "qst/equations.hpp"
#include "qst/family.hpp"
#include "qst/noise.hpp"

namespace qst {

/// Slack granted to every comparison that involves a numerically
/// maximized sup-norm.
inline constexpr double kOptimizerSlack = 2e-3;
inline constexpr double kHadamardRobustConstant = 4579.0;

struct ScanRecord {
  NoiseKind noise_kind = NoiseKind::Depolarize;
  double strength = 0.0;
  double eps = 0.0;   // exact max_violation
  double dist = 0.0;  // dist_to_family
  std::optional<double> bound;
  std::optional<double> ratio;
  double phi = 0.0;
  bool converged = true;
};

/// One record per strength, in grid order. The bound 4579 sqrt(eps) is
/// attached for the Hadamard family only.
std::vector<ScanRecord> noise_scan(const Family& family, NoiseKind kind, const std::vector<double>& grid,
                                   const std::vector<Channel>& base, const FamilyDistanceOptions& opts = {});
std::vector<ScanRecord> noise_scan_serial(const Family& family, NoiseKind kind, const std::vector<double>& grid,
                                          const std::vector<Channel>& base, const FamilyDistanceOptions& opts = {});

/// Header `noise_kind,strength,epsilon,distance,bound,ratio`, %.12g, LF.
void write_csv(std::ostream& out, const std::vector<ScanRecord>& records);

struct Lemma5Report {
  bool hypothesis_met = true;
  double measured_eps = 0.0;   // max deviation at +-u, +-v
  double effective_eps = 0.0;  // eps if the hypothesis holds, else measured_eps
  double distance = 0.0;       // ||G - I||_inf
  double bound = 0.0;          // 241 * effective_eps
  double margin = 0.0;         // bound + slack - distance
  bool holds = true;
};

/// u, v must be orthonormal (DomainError otherwise).
Lemma5Report check_lemma5(const Channel& g, const BlochVector& u, const BlochVector& v, double eps,
                          const SupNormOptions& opts = {});

struct Fact8Report {
  double eps = 0.0;       // max over the six axis states of ||G(z) - z||_1
  double distance = 0.0;  // ||G - I||_inf
  double bound = 0.0;     // 8 eps
  double margin = 0.0;
  bool holds = true;
};

/// g need not be CP.
Fact8Report check_fact_8eps(const Channel& g, const SupNormOptions& opts = {});

struct ExponentFit {
  double c = 0.0;
  double k_inv = 0.0;
  double residual = 0.0;  // RMS error in log-log space
  int points = 0;
};

/// Least squares of log dist against log eps over records with eps, dist > 0.
/// DomainError unless there are at least 8 such points spanning two decades.
ExponentFit fit_exponent(const std::vector<ScanRecord>& records);

struct ChainLink {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool holds = true;
};

struct ChainReport {
  double eps = 0.0;  // max violation of the Hadamard equations
  double phi = 0.0;  // phase picked from the equator point
  std::vector<ChainLink> links;
  bool all_hold() const;
};

/// Replays the Hadamard robustness argument on a one-qubit G:
///   square:   max_b ||G^2(|b><b|) - |b><b|||_1        <= 3 sqrt(eps)
///   equator:  ||G(|0><0|) - rho||_1                    <= 10 sqrt(eps)
///   residual: max over four states of ||H_phi G(s) - s||_1 <= 19 sqrt(eps)
///   final:    ||G - H_phi||_inf                        <= 4579 sqrt(eps)
ChainReport theorem5_chain_probe(const Channel& g, const SupNormOptions& opts = {});

nlohmann::json to_json(const ScanRecord& r);
nlohmann::json to_json(const Lemma5Report& r);
nlohmann::json to_json(const Fact8Report& r);
nlohmann::json to_json(const ExponentFit& f);
nlohmann::json to_json(const ChainReport& r);

}  // namespace qst
