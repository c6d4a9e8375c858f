#include "qst/roblab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>

#include "qst/errors.hpp"
#include "qst/gates.hpp"

namespace qst {

namespace {

constexpr double kExactSlack = 1e-9;

ScanRecord scan_point(const Family& family, const EquationSet& set, NoiseKind kind, double strength,
                      const std::vector<Channel>& base, const FamilyDistanceOptions& opts) {
  std::vector<Channel> noisy;
  noisy.reserve(base.size());
  for (const auto& g : base) noisy.push_back(apply_noise(g, NoiseModel{kind, strength}));
  ScanRecord r;
  r.noise_kind = kind;
  r.strength = strength;
  r.eps = max_violation(set, noisy);
  const FamilyDistance fd = dist_to_family_serial(noisy, family, opts);
  r.dist = fd.distance;
  r.phi = fd.phi;
  r.converged = fd.converged;
  if (family.id() == FamilyId::Hadamard) {
    r.bound = kHadamardRobustConstant * std::sqrt(r.eps);
    if (*r.bound > 0.0) r.ratio = r.dist / *r.bound;
  }
  return r;
}

}  // namespace

std::vector<ScanRecord> noise_scan(const Family& family, NoiseKind kind, const std::vector<double>& grid,
                                   const std::vector<Channel>& base, const FamilyDistanceOptions& opts) {
  const EquationSet set = family_equations(family);
  std::vector<ScanRecord> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const int n = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = scan_point(family, set, kind, grid[k], base, opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  // Same exception the serial scan would raise first.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<ScanRecord> noise_scan_serial(const Family& family, NoiseKind kind, const std::vector<double>& grid,
                                          const std::vector<Channel>& base, const FamilyDistanceOptions& opts) {
  const EquationSet set = family_equations(family);
  std::vector<ScanRecord> out;
  out.reserve(grid.size());
  for (double s : grid) out.push_back(scan_point(family, set, kind, s, base, opts));
  return out;
}

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
  out << "noise_kind,strength,epsilon,distance,bound,ratio\n";
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
  };
  for (const auto& r : records) {
    out << to_string(r.noise_kind) << ',' << num(r.strength) << ',' << num(r.eps) << ',' << num(r.dist) << ','
        << (r.bound ? num(*r.bound) : "") << ',' << (r.ratio ? num(*r.ratio) : "") << '\n';
  }
}

Lemma5Report check_lemma5(const Channel& g, const BlochVector& u, const BlochVector& v, double eps,
                          const SupNormOptions& opts) {
  if (g.qubits() != 1) throw DimensionError("check_lemma5 needs a one-qubit map");
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9 || std::abs(u.vec().dot(v.vec())) > 1e-9) {
    throw DomainError("check_lemma5: u and v must be orthonormal");
  }
  if (!(eps >= 0.0)) throw DomainError("check_lemma5: eps must be non-negative");
  const BlochAffine a = affine_of_channel(g);
  Lemma5Report r;
  for (const auto& w : {u.vec(), v.vec()}) {
    for (double s : {1.0, -1.0}) {
      const Eigen::Vector3d p = s * w;
      r.measured_eps = std::max(r.measured_eps, (a.linear * p + a.offset - p).norm());
    }
  }
  r.hypothesis_met = r.measured_eps <= eps + 1e-12;
  r.effective_eps = r.hypothesis_met ? eps : r.measured_eps;
  r.distance = sup_norm_distance(g, Channel::identity(1), opts).value;
  r.bound = 241.0 * r.effective_eps;
  r.margin = r.bound + kOptimizerSlack - r.distance;
  r.holds = r.margin >= 0.0;
  return r;
}

Fact8Report check_fact_8eps(const Channel& g, const SupNormOptions& opts) {
  if (g.qubits() != 1) throw DimensionError("check_fact_8eps needs a one-qubit map");
  Fact8Report r;
  for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
    for (int s : {1, -1}) {
      const Matrix z = zeta(ax, s).matrix();
      r.eps = std::max(r.eps, trace_norm(g(z) - z));
    }
  }
  r.distance = sup_norm_distance(g, Channel::identity(1), opts).value;
  r.bound = 8.0 * r.eps;
  r.margin = r.bound + kOptimizerSlack - r.distance;
  r.holds = r.margin >= 0.0;
  return r;
}

ExponentFit fit_exponent(const std::vector<ScanRecord>& records) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.eps > 0.0 && r.dist > 0.0) {
      xs.push_back(std::log(r.eps));
      ys.push_back(std::log(r.dist));
    }
  }
  if (xs.size() < 8) throw DomainError("fit_exponent: need at least 8 records with eps > 0 and dist > 0");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*hi - *lo < 2.0 * std::log(10.0)) throw DomainError("fit_exponent: eps must span at least two decades");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(xs.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = 1.0;
    a(static_cast<Eigen::Index>(i), 1) = xs[i];
    b(static_cast<Eigen::Index>(i)) = ys[i];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  ExponentFit f;
  f.c = std::exp(coef(0));
  f.k_inv = coef(1);
  f.residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(xs.size()));
  f.points = static_cast<int>(xs.size());
  return f;
}

bool ChainReport::all_hold() const {
  return std::all_of(links.begin(), links.end(), [](const ChainLink& l) { return l.holds; });
}

ChainReport theorem5_chain_probe(const Channel& g, const SupNormOptions& opts) {
  if (g.qubits() != 1) throw DimensionError("theorem5_chain_probe needs a one-qubit map");
  ChainReport rep;
  const std::vector<Channel> tuple{g};
  rep.eps = max_violation(family_equations(Family::hadamard()), tuple);
  const double root = std::sqrt(rep.eps);
  auto link = [&](std::string name, double value, double bound, double slack) {
    ChainLink l{std::move(name), value, bound, bound + slack - value, true};
    l.holds = l.margin >= 0.0;
    rep.links.push_back(l);
  };

  const Matrix k0 = DensityMatrix::basis(Bitstring("0")).matrix();
  const Matrix k1 = DensityMatrix::basis(Bitstring("1")).matrix();
  const Matrix g0 = g(k0);
  link("square", std::max(trace_norm(g(g0) - k0), trace_norm(g(g(k1)) - k1)), 3.0 * root, kExactSlack);

  // Project the Bloch point of G(|0><0|) onto the equator and normalize.
  const Eigen::Vector3d b = bloch_coords(g0);
  Eigen::Vector3d e(b(0), b(1), 0.0);
  if (e.norm() < 1e-300) e = Eigen::Vector3d::UnitX();
  e.normalize();
  rep.phi = std::atan2(e(1), e(0));
  if (rep.phi < 0.0) rep.phi += 2.0 * std::numbers::pi;
  link("equator", (b - e).norm(), 10.0 * root, kExactSlack);

  const Channel h = gates::hadamard(rep.phi);
  double residual = 0.0;
  for (const Matrix& s : {k0, k1, h(k0), h(k1)}) residual = std::max(residual, trace_norm(h(g(s)) - s));
  link("residual", residual, 19.0 * root, kExactSlack);

  link("final", sup_norm_distance(g, h, opts).value, kHadamardRobustConstant * root, kOptimizerSlack);
  return rep;
}

namespace {

nlohmann::json opt(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const ScanRecord& r) {
  return {{"noise_kind", to_string(r.noise_kind)},
          {"strength", r.strength},
          {"epsilon", r.eps},
          {"distance", r.dist},
          {"bound", opt(r.bound)},
          {"ratio", opt(r.ratio)},
          {"phi", r.phi},
          {"converged", r.converged}};
}

nlohmann::json to_json(const Lemma5Report& r) {
  return {{"hypothesis_met", r.hypothesis_met}, {"measured_eps", r.measured_eps}, {"effective_eps", r.effective_eps},
          {"distance", r.distance},             {"bound", r.bound},               {"margin", r.margin},
          {"holds", r.holds}};
}

nlohmann::json to_json(const Fact8Report& r) {
  return {{"eps", r.eps}, {"distance", r.distance}, {"bound", r.bound}, {"margin", r.margin}, {"holds", r.holds}};
}

nlohmann::json to_json(const ExponentFit& f) {
  return {{"C", f.c}, {"k_inv", f.k_inv}, {"residual", f.residual}, {"points", f.points}};
}

nlohmann::json to_json(const ChainReport& r) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : r.links) {
    links.push_back({{"name", l.name}, {"value", l.value}, {"bound", l.bound}, {"margin", l.margin}, {"holds", l.holds}});
  }
  return {{"eps", r.eps}, {"phi", r.phi}, {"links", std::move(links)}, {"all_hold", r.all_hold()}};
}

}  // namespace qst
