#pragma once

// Non-adaptive self-tester. It sees the gates only through an Oracle.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qst/equations.hpp"
#include "qst/errors.hpp"
#include "qst/oracle.hpp"

namespace qst {

inline constexpr long long kMaxTotalQueries = 1'000'000'000;

struct TesterPlan {
  double eps = 0.0;
  int d = 0;
  long per_eq_samples = 0;
  long long total_queries = 0;
};

/// per_eq_samples = ceil(18 ln(6d) / eps^2): two-sided Hoeffding with
/// failure budget 1/(3d) per equation at accuracy eps/6.
TesterPlan plan_samples(int d, double eps);

/// Smallest eps for which d equations fit in max_total queries.
double min_feasible_eps(int d, long long max_total = kMaxTotalQueries);

/// Thrown by run_tester when the plan needs more than kMaxTotalQueries.
class PlanOverflow : public DomainError {
 public:
  PlanOverflow(const TesterPlan& plan, double required_eps);
  const TesterPlan& plan() const { return plan_; }
  double required_eps() const { return required_eps_; }

 private:
  TesterPlan plan_;
  double required_eps_;
};

struct Fraction {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// The fraction with the smallest denominator within eps/24 of r.
Fraction round_constant(double r, double eps);

enum class Verdict { Pass, Fail };
std::string_view to_string(Verdict v);

struct EquationEstimate {
  double estimate = 0.0;   // p~
  Fraction rounded;        // r~
  double deviation = 0.0;  // |p~ - r~|
  double threshold = 0.0;  // 2 eps / 3
  bool ok = true;
};

struct Guarantee {
  double delta1 = 0.0;                // eps / (3 k_max)
  std::optional<double> delta2;       // robustness delta, when known
  std::string delta2_source;          // "supplied", "hadamard-bound", "unknown"
};

struct TesterVerdict {
  Verdict verdict = Verdict::Pass;
  TesterPlan plan;
  std::vector<EquationEstimate> per_eq;
  long long queries_used = 0;
  Guarantee guarantee;
};

/// Runs the plan through the oracle. PASS iff every |p~ - r~| <= 2 eps / 3.
/// delta defaults to 4579 sqrt(eps) when the set is the Hadamard family's.
TesterVerdict run_tester(Oracle& oracle, const EquationSet& set, double eps, std::optional<double> delta = std::nullopt);

/// k_max(E) * dist.
double lemma7_bound(const EquationSet& set, double dist);

nlohmann::json to_json(const TesterPlan& plan);
nlohmann::json to_json(const TesterVerdict& v);

}  // namespace qst
