// qselftest: equation sets, exact checks, the sampling self-tester, noise
// scans and sup-norm distances from the command line.
//
// Exit codes: 0 success / PASS, 1 FAIL, 2 usage or input error,
// 3 numeric failure (non-convergence, non-CP input).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qst/angle.hpp"
#include "qst/equations.hpp"
#include "qst/errors.hpp"
#include "qst/family.hpp"
#include "qst/gatespec.hpp"
#include "qst/oracle.hpp"
#include "qst/roblab.hpp"
#include "qst/supnorm.hpp"
#include "qst/tester.hpp"

namespace {

using nlohmann::json;
using namespace qst;

constexpr const char* kToolVersion = "0.1.0";

struct FamilyArgs {
  std::string name;
  std::string alpha;
  std::string theta;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.name,
                  "r-alpha-theta | hadamard | hadamard-not | hadamard-phase | hadamard-cnot | hadamard-phase-cnot")
      ->required();
  cmd->add_option("--alpha", f.alpha, "rotation angle, e.g. 2/3pi");
  cmd->add_option("--theta", f.theta, "axis polar angle, e.g. pi/3");
}

Family make_family(const FamilyArgs& f) {
  std::optional<PiFraction> alpha;
  std::optional<double> theta;
  if (!f.alpha.empty()) {
    const Angle a = parse_angle(f.alpha);
    if (!a.pi_fraction) throw DomainError("--alpha must be a rational multiple of pi (e.g. 1/4pi)");
    alpha = a.pi_fraction;
  }
  if (!f.theta.empty()) theta = parse_angle(f.theta).radians;
  return Family::from_name(f.name, alpha, theta);
}

std::vector<Channel> load_gates(const std::vector<std::string>& paths) {
  std::vector<Channel> gates;
  for (const auto& p : paths) gates.push_back(load_gate(p));
  return gates;
}

void require_cp(const std::vector<Channel>& gates) {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (!gates[i].is_cp()) {
      throw NotCompletelyPositive("gate " + std::to_string(i) + " is not completely positive");
    }
  }
}

json header(std::uint64_t seed) { return {{"tool_version", kToolVersion}, {"seed", seed}}; }

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json family_json(const Family& f) {
  json j = {{"name", f.name()}};
  if (f.alpha()) j["alpha"] = f.alpha()->str();
  if (f.theta()) j["theta"] = *f.theta();
  return j;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("--grid: cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError("--grid is empty");
  return out;
}

std::vector<double> make_grid(double from, double to, int points, bool log) {
  if (points < 2) throw DomainError("--points must be at least 2");
  if (log && !(from > 0.0 && to > 0.0)) throw DomainError("--log needs positive --from/--to");
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out.push_back(log ? from * std::pow(to / from, t) : from + (to - from) * t);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-testing of quantum gates from experimental equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::uint64_t seed = 0;
  FamilyArgs fam;
  std::vector<std::string> gate_paths;
  double eps = 0.05;
  std::optional<double> delta;
  std::string noise_kind;
  std::string grid_text;
  double from = 0.0, to = 0.0;
  int points = 0;
  bool log_grid = false;
  std::string out_path;

  auto* equations = app.add_subcommand("equations", "print the equation set of a family as JSON");
  add_family_options(equations, fam);

  auto* check = app.add_subcommand("check", "exact max violation and distance to the family");
  add_family_options(check, fam);
  check->add_option("--gate", gate_paths, "gate-spec JSON, one per tuple component")->required();
  check->add_option("--seed", seed, "optimizer seed");

  auto* selftest = app.add_subcommand("selftest", "run the sampling self-tester; exit 0 on PASS, 1 on FAIL");
  add_family_options(selftest, fam);
  selftest->add_option("--gate", gate_paths, "gate-spec JSON, one per tuple component")->required();
  selftest->add_option("--eps", eps, "accuracy, in (0, 1]")->required();
  selftest->add_option("--seed", seed, "oracle seed")->required();
  selftest->add_option("--delta", delta, "robustness delta to report as the rejection radius");

  auto* scan = app.add_subcommand("scan", "noise scan against a family; CSV");
  add_family_options(scan, fam);
  scan->add_option("--noise", noise_kind, "depolarize | overrotate | phase_drift | amplitude_damp")->required();
  scan->add_option("--grid", grid_text, "comma-separated strengths");
  scan->add_option("--from", from, "first strength");
  scan->add_option("--to", to, "last strength");
  scan->add_option("--points", points, "number of strengths between --from and --to");
  scan->add_flag("--log", log_grid, "geometric spacing");
  scan->add_option("--gate", gate_paths, "base gates (default: the family member at phi = 0)");
  scan->add_option("--out", out_path, "CSV path (default: stdout)");
  scan->add_option("--seed", seed, "optimizer seed");

  auto* distance = app.add_subcommand("distance", "sup-norm distance between two gates");
  distance->add_option("--gate", gate_paths, "two gate-spec JSON files")->required()->expected(2);
  distance->add_option("--seed", seed, "optimizer seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (equations->parsed()) {
      const Family f = make_family(fam);
      const EquationSet set = family_equations(f);
      json j = header(seed);
      j["family"] = family_json(f);
      j["d"] = set.d();
      j["k_max"] = set.k_max();
      j["equations"] = to_json(set)["equations"];
      print(j);
      return 0;
    }

    if (check->parsed()) {
      const Family f = make_family(fam);
      const auto gates = load_gates(gate_paths);
      require_cp(gates);
      const EquationSet set = family_equations(f);
      const auto viol = violations(set, gates);
      FamilyDistanceOptions opts;
      opts.coarse.seed = opts.refine.seed = opts.fine.seed = seed;
      const FamilyDistance fd = dist_to_family(gates, f, opts);
      json j = header(seed);
      j["family"] = family_json(f);
      j["violations"] = viol;
      j["max_violation"] = *std::max_element(viol.begin(), viol.end());
      j["distance"] = fd.distance;
      j["phi"] = fd.phi;
      j["sign"] = fd.sign;
      j["converged"] = fd.converged;
      j["lemma7_bound"] = lemma7_bound(set, fd.distance);
      print(j);
      return fd.converged ? 0 : 3;
    }

    if (selftest->parsed()) {
      const Family f = make_family(fam);
      if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("--eps must lie in (0, 1]");
      Oracle oracle(load_gates(gate_paths), seed);
      const EquationSet set = family_equations(f);
      const TesterVerdict v = run_tester(oracle, set, eps, delta);
      json j = header(seed);
      j["family"] = family_json(f);
      j.update(to_json(v));
      print(j);
      return v.verdict == Verdict::Pass ? 0 : 1;
    }

    if (scan->parsed()) {
      const Family f = make_family(fam);
      const auto kind = parse_noise_kind(noise_kind);
      if (!kind) throw DomainError("unknown noise kind '" + noise_kind + "'");
      std::vector<double> grid;
      if (!grid_text.empty()) {
        grid = parse_grid(grid_text);
      } else if (points > 0) {
        grid = make_grid(from, to, points, log_grid);
      } else {
        throw DomainError("scan needs --grid or --from/--to/--points");
      }
      const auto base = gate_paths.empty() ? f.member(0.0, 1) : load_gates(gate_paths);
      require_cp(base);
      FamilyDistanceOptions opts;
      opts.coarse.seed = opts.refine.seed = opts.fine.seed = seed;
      const auto records = noise_scan(f, *kind, grid, base, opts);
      if (out_path.empty()) {
        write_csv(std::cout, records);
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw DomainError("cannot write '" + out_path + "'");
        write_csv(out, records);
      }
      for (const auto& r : records) {
        if (!r.converged) return 3;
      }
      return 0;
    }

    if (distance->parsed()) {
      const auto gates = load_gates(gate_paths);
      if (gates[0].qubits() != gates[1].qubits()) throw DimensionError("distance: gates act on different qubit counts");
      SupNormOptions opts;
      opts.seed = seed;
      const SupNormResult r = sup_norm_distance(gates[0], gates[1], opts);
      json j = header(seed);
      j["distance"] = r.value;
      j["converged"] = r.converged;
      j["u"] = matrix_to_json(r.u);
      j["v"] = matrix_to_json(r.v);
      print(j);
      return r.converged ? 0 : 3;
    }
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NotCompletelyPositive& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
