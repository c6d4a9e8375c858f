#include "qst/tester.hpp"

#include <cmath>

#include "qst/errors.hpp"

namespace qst {

TesterPlan plan_samples(int d, double eps) {
  if (d < 1) throw DomainError("plan_samples: d must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("plan_samples: eps must lie in (0, 1]");
  TesterPlan p;
  p.eps = eps;
  p.d = d;
  p.per_eq_samples = static_cast<long>(std::ceil(18.0 * std::log(6.0 * d) / (eps * eps)));
  p.total_queries = static_cast<long long>(d) * p.per_eq_samples;
  return p;
}

double min_feasible_eps(int d, long long max_total) {
  if (d < 1) throw DomainError("min_feasible_eps: d must be at least 1");
  return std::sqrt(static_cast<double>(d) * 18.0 * std::log(6.0 * d) / static_cast<double>(max_total));
}

PlanOverflow::PlanOverflow(const TesterPlan& plan, double required_eps)
    : DomainError("tester plan needs " + std::to_string(plan.total_queries) + " queries (limit " +
                  std::to_string(kMaxTotalQueries) + "); use eps >= " + std::to_string(required_eps)),
      plan_(plan),
      required_eps_(required_eps) {}

std::string Fraction::str() const { return std::to_string(num) + "/" + std::to_string(den); }

namespace {

// Simplest rational in [a, b], 0 <= a <= b, by continued fractions.
Fraction simplest_between(double a, double b, int depth) {
  const double fl = std::floor(a);
  if (fl == a) return {static_cast<long long>(fl), 1};
  if (fl + 1.0 <= b) return {static_cast<long long>(fl) + 1, 1};
  if (depth > 60) return {static_cast<long long>(std::llround(a * (1LL << 40))), 1LL << 40};
  const Fraction f = simplest_between(1.0 / (b - fl), 1.0 / (a - fl), depth + 1);
  return {static_cast<long long>(fl) * f.num + f.den, f.num};
}

}  // namespace

Fraction round_constant(double r, double eps) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("round_constant: r must lie in [0, 1]");
  if (!(eps > 0.0)) throw DomainError("round_constant: eps must be positive");
  const double tol = eps / 24.0;
  Fraction f = simplest_between(std::max(0.0, r - tol), std::min(1.0, r + tol), 0);
  if (std::abs(f.value() - r) > tol) {
    // Rounding in the recursion can land a hair outside; fall back to the grid.
    const long long den = static_cast<long long>(std::ceil(12.0 / eps));
    f = {std::llround(r * static_cast<double>(den)), den};
  }
  return f;
}

std::string_view to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

TesterVerdict run_tester(Oracle& oracle, const EquationSet& set, double eps, std::optional<double> delta) {
  const TesterPlan plan = plan_samples(set.d(), eps);
  if (plan.total_queries > kMaxTotalQueries) throw PlanOverflow(plan, min_feasible_eps(set.d()));
  for (const auto& eq : set.equations()) oracle.check(eq);

  TesterVerdict out;
  out.plan = plan;
  const long long before = oracle.query_count();
  const auto estimates = oracle.estimate_each(set, plan.per_eq_samples);
  out.queries_used = oracle.query_count() - before;

  const double threshold = 2.0 * eps / 3.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    EquationEstimate e;
    e.estimate = estimates[i];
    e.rounded = round_constant(set.equations()[i].constant(), eps);
    e.deviation = std::abs(e.estimate - e.rounded.value());
    e.threshold = threshold;
    e.ok = e.deviation <= threshold;
    if (!e.ok) out.verdict = Verdict::Fail;
    out.per_eq.push_back(e);
  }

  out.guarantee.delta1 = eps / (3.0 * set.k_max());
  if (delta) {
    if (!(*delta >= 0.0)) throw DomainError("run_tester: delta must be non-negative");
    out.guarantee.delta2 = *delta;
    out.guarantee.delta2_source = "supplied";
  } else if (set.family() && set.family()->id() == FamilyId::Hadamard) {
    out.guarantee.delta2 = 4579.0 * std::sqrt(eps);
    out.guarantee.delta2_source = "hadamard-bound";
  } else {
    out.guarantee.delta2_source = "unknown";
  }
  return out;
}

double lemma7_bound(const EquationSet& set, double dist) {
  if (!(dist >= 0.0)) throw DomainError("lemma7_bound: dist must be non-negative");
  return set.k_max() * dist;
}

nlohmann::json to_json(const TesterPlan& plan) {
  return {{"eps", plan.eps}, {"d", plan.d}, {"per_eq_samples", plan.per_eq_samples},
          {"total_queries", plan.total_queries}};
}

nlohmann::json to_json(const TesterVerdict& v) {
  nlohmann::json per_eq = nlohmann::json::array();
  for (const auto& e : v.per_eq) {
    per_eq.push_back({{"estimate", e.estimate},
                      {"rounded_constant", e.rounded.str()},
                      {"deviation", e.deviation},
                      {"threshold", e.threshold},
                      {"ok", e.ok}});
  }
  nlohmann::json g = {{"delta1", v.guarantee.delta1}, {"delta2_source", v.guarantee.delta2_source}};
  g["delta2"] = v.guarantee.delta2 ? nlohmann::json(*v.guarantee.delta2) : nlohmann::json(nullptr);
  return {{"verdict", to_string(v.verdict)},
          {"plan", to_json(v.plan)},
          {"per_eq", std::move(per_eq)},
          {"queries_used", v.queries_used},
          {"guarantee", std::move(g)}};
}

}  // namespace qst
