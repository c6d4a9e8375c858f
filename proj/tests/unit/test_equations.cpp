#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qst/equations.hpp"
#include "qst/errors.hpp"
#include "qst/gates.hpp"
#include "qst/noise.hpp"

using namespace qst;

namespace {

constexpr double kPi = oracle::kPi;

ExperimentalEquation eq1(std::vector<Step> program, const char* w, const char* v, double r = 0.0, int arity = 1) {
  return ExperimentalEquation(1, arity, std::move(program), Bitstring(w), Bitstring(v), r);
}

// Embedded unitary of one step.
Matrix step_unitary(const Step& s, const std::vector<Matrix>& us) {
  const Matrix& u = us[static_cast<std::size_t>(s.var)];
  const Matrix i2 = Matrix::Identity(2, 2);
  switch (s.embed) {
    case Embedding::Whole: return u;
    case Embedding::LeftWithId: return oracle::kron(u, i2);
    case Embedding::RightWithId: return oracle::kron(i2, u);
    case Embedding::Pair: return oracle::kron(u, u);
  }
  return u;
}

// |<v| W |w>|^2 with W the program multiplied out, outermost factor first.
double statevector_probability(const ExperimentalEquation& eq, const std::vector<Matrix>& us) {
  const int n = 1 << eq.qubits();
  Matrix w = Matrix::Identity(n, n);
  for (const Step& s : eq.program()) {
    const Matrix m = step_unitary(s, us);
    for (int e = 0; e < s.exp; ++e) w = w * m;
  }
  return oracle::basis_probability(w, static_cast<int>(eq.input().index()), static_cast<int>(eq.outcome().index()));
}

// Applies one-qubit channels block-by-block from their Choi matrices.
double choi_probability(const ExperimentalEquation& eq, const std::vector<Channel>& gs) {
  Matrix rho = DensityMatrix::basis(eq.input()).matrix();
  for (auto it = eq.program().rbegin(); it != eq.program().rend(); ++it) {
    for (int e = 0; e < it->exp; ++e) rho = oracle::choi_apply(gs[static_cast<std::size_t>(it->var)].choi(), rho);
  }
  const auto v = static_cast<Eigen::Index>(eq.outcome().index());
  return rho(v, v).real();
}

ExperimentalEquation random_equation(int qubits, int arity, std::mt19937_64& rng, int max_exp = 4) {
  std::uniform_int_distribution<int> var(0, arity - 1), ex(0, max_exp), len(1, 4), bit(0, (1 << qubits) - 1);
  std::uniform_int_distribution<int> emb(qubits == 2 ? 1 : 0, qubits == 2 ? 3 : 0);
  std::vector<Step> prog;
  const int l = len(rng);
  for (int i = 0; i < l; ++i) prog.push_back({var(rng), static_cast<Embedding>(emb(rng)), ex(rng)});
  return ExperimentalEquation(qubits, arity, prog, Bitstring::from_index(static_cast<std::size_t>(bit(rng)), qubits),
                              Bitstring::from_index(static_cast<std::size_t>(bit(rng)), qubits), 0.5);
}

}  // namespace

TEST(ProbabilityTerm, Examples) {
  for (double phi : {0.0, 0.9, 3.3}) {
    const std::vector<Channel> h{gates::hadamard(phi)};
    EXPECT_NEAR(probability_term(eq1({{0, Embedding::Whole, 1}}, "0", "0"), h), 0.5, 1e-12);
    EXPECT_NEAR(probability_term(eq1({{0, Embedding::Whole, 2}}, "1", "0"), h), 0.0, 1e-12);
  }
  const std::vector<Channel> fg{gates::hadamard(0.0), gates::cnot(0.0)};
  const ExperimentalEquation pair(2, 2, {{0, Embedding::Pair, 1}, {1, Embedding::Whole, 1}, {0, Embedding::Pair, 1}},
                                  Bitstring("00"), Bitstring("00"), 1.0);
  EXPECT_NEAR(probability_term(pair, fg), 1.0, 1e-12);
}

TEST(ProbabilityTerm, EmptyProgram) {
  const std::vector<Channel> h{gates::hadamard(0.0)};
  const auto same = eq1({}, "1", "1", 1.0);
  EXPECT_EQ(same.size(), 0);
  EXPECT_NEAR(probability_term(same, h), 1.0, 1e-15);
  EXPECT_NEAR(probability_term(eq1({}, "1", "0"), h), 0.0, 1e-15);
}

TEST(ProbabilityTerm, MatchesStateVectorOracle) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    const int q = t % 2 == 0 ? 1 : 2;
    const std::vector<Matrix> us{oracle::random_unitary(2, rng),
                                 q == 1 ? oracle::random_unitary(2, rng) : oracle::random_unitary(2, rng)};
    const ExperimentalEquation eq = random_equation(q, 2, rng);
    const std::vector<Channel> gs{from_unitary(us[0]), from_unitary(us[1])};
    EXPECT_NEAR(probability_term(eq, gs), statevector_probability(eq, us), 1e-10);
  }
  // Whole-register two-qubit gates.
  for (int t = 0; t < 50; ++t) {
    const std::vector<Matrix> us{oracle::random_unitary(4, rng)};
    const std::vector<Channel> gs{from_unitary(us[0])};
    const ExperimentalEquation eq(2, 1, {{0, Embedding::Whole, 1 + t % 7}}, Bitstring::from_index(t % 4, 2),
                                  Bitstring::from_index((t / 4) % 4, 2), 0.0);
    EXPECT_NEAR(probability_term(eq, gs), statevector_probability(eq, us), 1e-10);
  }
}

TEST(ProbabilityTerm, MatchesChoiOracleForNoisyGates) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int t = 0; t < 100; ++t) {
    const std::vector<Channel> gs{apply_noise(from_unitary(oracle::random_unitary(2, rng)), {NoiseKind::AmplitudeDamp, u(rng)}),
                                  apply_noise(from_unitary(oracle::random_unitary(2, rng)), {NoiseKind::Depolarize, u(rng)})};
    const ExperimentalEquation eq = random_equation(1, 2, rng, 40);
    EXPECT_NEAR(probability_term(eq, gs), choi_probability(eq, gs), 1e-10);
  }
}

TEST(ProbabilityTerm, LargeExponents) {
  // H^2 = I, so an even power fixes |0><0| however large it is.
  const std::vector<Channel> h{gates::hadamard(0.4)};
  EXPECT_NEAR(probability_term(eq1({{0, Embedding::Whole, kMaxExponent}}, "0", "0"), h), 1.0, 1e-9);
  EXPECT_NEAR(probability_term(eq1({{0, Embedding::Whole, kMaxExponent - 1}}, "0", "0"), h), 0.5, 1e-9);
}

TEST(ProbabilityTerm, CompatibilityErrors) {
  const auto eq = eq1({{1, Embedding::Whole, 1}}, "0", "0", 0.0, 2);
  const std::vector<Channel> one{gates::hadamard(0)};
  EXPECT_THROW(probability_term(eq, one), DimensionError);
  const std::vector<Channel> wrong{gates::hadamard(0), gates::cnot(0)};
  EXPECT_THROW(probability_term(eq, wrong), DimensionError);
}

TEST(Equation, Validation) {
  EXPECT_THROW(eq1({{1, Embedding::Whole, 1}}, "0", "0"), DomainError);
  EXPECT_THROW(eq1({{0, Embedding::Whole, -1}}, "0", "0"), DomainError);
  EXPECT_THROW(eq1({{0, Embedding::Whole, kMaxExponent + 1}}, "0", "0"), DomainError);
  EXPECT_THROW(eq1({{0, Embedding::Pair, 1}}, "0", "0"), DomainError);
  EXPECT_THROW(eq1({{0, Embedding::Whole, 1}}, "00", "0"), DomainError);
  EXPECT_THROW(eq1({{0, Embedding::Whole, 1}}, "0", "0", 1.5), DomainError);
  EXPECT_THROW(ExperimentalEquation(2, 1, {{0, Embedding::Whole, 1}, {0, Embedding::LeftWithId, 1}}, Bitstring("00"),
                                    Bitstring("00"), 1.0),
               DomainError);
}

TEST(Equation, Size) {
  EXPECT_EQ(eq1({{0, Embedding::Whole, 2}}, "0", "0").size(), 2);
  EXPECT_EQ(eq1({{0, Embedding::Whole, 1}, {1, Embedding::Whole, 2}, {0, Embedding::Whole, 1}}, "0", "0", 1, 2).size(), 4);
  const ExperimentalEquation pair(2, 2, {{0, Embedding::Pair, 1}, {1, Embedding::Whole, 1}, {0, Embedding::Pair, 1}},
                                  Bitstring("00"), Bitstring("00"), 1.0);
  EXPECT_EQ(pair.size(), 3);
}

TEST(MaxViolation, Examples) {
  const EquationSet h = family_equations(Family::hadamard());
  const std::vector<Channel> member{gates::hadamard(2.2)};
  EXPECT_LE(max_violation(h, member), 1e-12);
  const std::vector<Channel> m{gates::measurement(1)};
  EXPECT_NEAR(max_violation(h, m), 0.5, 1e-12);
  double last = -1.0;
  for (int i = 0; i < 10; ++i) {
    const std::vector<Channel> g{apply_noise(gates::hadamard(0.0), {NoiseKind::Depolarize, 0.02 * (i + 1)})};
    const double v = max_violation(h, g);
    EXPECT_GT(v, last);
    last = v;
  }
}

TEST(NAlpha, MatchesBruteForce) {
  EXPECT_EQ(n_alpha(1, 1), 2);
  EXPECT_EQ(n_alpha(2, 3), 3);
  EXPECT_EQ(n_alpha(1, 2), 4);
  EXPECT_EQ(n_alpha(1, 4), 8);
  for (long b = 1; b <= 40; ++b) {
    for (long a = 1; a <= b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      EXPECT_EQ(n_alpha(a, b), oracle::n_alpha_brute(a, b)) << a << "/" << b;
    }
  }
  EXPECT_THROW(n_alpha(2, 4), DomainError);
  EXPECT_THROW(n_alpha(5, 4), DomainError);
}

TEST(ZK, Examples) {
  EXPECT_NEAR(0.5 + 0.5 * z_k(kPi, kPi / 4, 1), 0.5, 1e-15);
  EXPECT_NEAR(z_k(kPi, kPi / 4, 1), 0.0, 1e-15);
  EXPECT_NEAR(z_k(kPi, kPi / 4, 2), 1.0, 1e-15);
  for (int k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(z_k(1.234, 0.0, k), 1.0);
}

TEST(ZK, SequencesSeparateAngles) {
  // Admissible (alpha, theta) pairs with equal n_alpha have distinct z-sequences.
  std::vector<std::pair<long, long>> fracs;
  for (long b = 1; fracs.size() < 20; ++b)
    for (long a = 1; a <= b && fracs.size() < 20; ++a)
      if (std::gcd(a, b) == 1) fracs.emplace_back(a, b);
  std::vector<double> thetas;
  for (int i = 1; i <= 20; ++i) thetas.push_back(i * (kPi / 2) / 20);
  struct Point {
    long a, b;
    double th;
    std::vector<double> z;
  };
  std::vector<Point> pts;
  for (auto [a, b] : fracs) {
    for (double th : thetas) {
      if (a == 1 && b == 1 && th == kPi / 2) continue;
      Point p{a, b, th, {}};
      for (int k = 1; k <= n_alpha(a, b); ++k) p.z.push_back(z_k(static_cast<double>(a) / b * kPi, th, k));
      pts.push_back(p);
    }
  }
  int compared = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].z.size() != pts[j].z.size()) continue;
      double gap = 0.0;
      for (std::size_t k = 0; k < pts[i].z.size(); ++k) gap = std::max(gap, std::abs(pts[i].z[k] - pts[j].z[k]));
      EXPECT_GT(gap, 1e-9) << pts[i].a << "/" << pts[i].b << "," << pts[i].th << " vs " << pts[j].a << "/" << pts[j].b
                           << "," << pts[j].th;
      ++compared;
    }
  }
  EXPECT_GT(compared, 1000);
}

TEST(FamilyEquations, Hadamard) {
  const EquationSet s = family_equations(Family::hadamard());
  ASSERT_EQ(s.d(), 3);
  EXPECT_EQ(s.k_max(), 2);
  EXPECT_DOUBLE_EQ(s.equations()[0].constant(), 0.5);
  EXPECT_DOUBLE_EQ(s.equations()[1].constant(), 1.0);
  EXPECT_DOUBLE_EQ(s.equations()[2].constant(), 0.0);
  EXPECT_EQ(s.equations()[2].input().str(), "1");
  EXPECT_EQ(s.equations()[2].size(), 2);
}

TEST(FamilyEquations, RotationTwoThirdsPi) {
  const EquationSet s = family_equations(Family::r_alpha_theta({2, 3}, kPi / 3));
  ASSERT_EQ(s.d(), 4);
  const double expect[] = {0.4375, 0.4375, 1.0, 0.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.equations()[static_cast<std::size_t>(i)].constant(), expect[i], 1e-15);
  for (int k = 1; k <= 3; ++k) {
    const auto& e = s.equations()[static_cast<std::size_t>(k - 1)];
    EXPECT_EQ(e.program(), (std::vector<Step>{{0, Embedding::Whole, k}}));
    EXPECT_NEAR(e.constant(), 0.5 + 0.5 * z_k(2 * kPi / 3, kPi / 3, k), 1e-12);
  }
  EXPECT_EQ(s.equations()[3].input().str(), "1");
  EXPECT_EQ(s.equations()[3].size(), 3);
}

TEST(FamilyEquations, HadamardPhase) {
  const EquationSet s = family_equations(Family::hadamard_phase({1, 4}));
  ASSERT_EQ(s.d(), 7);
  EXPECT_EQ(s.k_max(), 10);
  EXPECT_NEAR(s.equations()[6].constant(), 0.8535533905932737, 1e-15);
  EXPECT_EQ(s.equations()[5].program()[1].exp, 8);
}

TEST(FamilyEquations, HadamardCnot) {
  const EquationSet s = family_equations(Family::hadamard_cnot());
  ASSERT_EQ(s.d(), 12);
  EXPECT_EQ(s.var_qubits(), (std::vector<int>{1, 2}));
  const std::vector<std::pair<std::string, std::string>> table{{"00", "00"}, {"01", "01"}, {"10", "11"}, {"11", "10"}};
  for (const auto& [w, v] : table) {
    bool found = false;
    for (const auto& e : s.equations()) {
      found = found || (e.program() == std::vector<Step>{{1, Embedding::Whole, 1}} && e.input().str() == w &&
                        e.outcome().str() == v && e.constant() == 1.0);
    }
    EXPECT_TRUE(found) << w << "->" << v;
  }
}

TEST(FamilyEquations, TripleIsTheUnion) {
  const EquationSet s = family_equations(Family::hadamard_phase_cnot());
  EXPECT_EQ(s.arity(), 3);
  EXPECT_EQ(s.d(), 16);
  EXPECT_EQ(s.var_qubits(), (std::vector<int>{1, 1, 2}));
}

TEST(FamilyEquations, MembersSatisfyExactly) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  const std::vector<Family> fams{Family::hadamard(),           Family::r_alpha_theta({2, 3}, kPi / 3),
                                 Family::r_alpha_theta({1, 4}, 0.4), Family::hadamard_not(),
                                 Family::hadamard_phase({1, 4}),     Family::hadamard_phase({2, 5}),
                                 Family::hadamard_cnot(),        Family::hadamard_phase_cnot()};
  for (const auto& f : fams) {
    const EquationSet s = family_equations(f);
    for (int t = 0; t < 16; ++t) {
      for (int sign : {1, -1}) EXPECT_LE(max_violation(s, f.member(u(rng), sign)), 1e-9) << f.name();
    }
  }
}

TEST(FamilyEquations, ImpostorsViolate) {
  const std::vector<Channel> m{gates::measurement(1)};
  EXPECT_GE(max_violation(family_equations(Family::hadamard()), m), 0.25);
  const std::vector<Channel> hm{gates::hadamard(0), compose(gates::negation(0), gates::measurement(1))};
  EXPECT_GE(max_violation(family_equations(Family::hadamard_not()), hm), 0.25);
  const std::vector<Channel> hp{gates::hadamard(0), gates::measurement(1)};
  EXPECT_GE(max_violation(family_equations(Family::hadamard_phase({1, 4})), hp), 0.25);
  const std::vector<Channel> hs{gates::hadamard(0), gates::swap()};
  EXPECT_GE(max_violation(family_equations(Family::hadamard_cnot()), hs), 0.25);
  const std::vector<Channel> trip{gates::hadamard(0), gates::phase(kPi / 4), gates::swap()};
  EXPECT_GE(max_violation(family_equations(Family::hadamard_phase_cnot()), trip), 0.25);
}

TEST(FamilyEquations, MeasurementMimicsPhase) {
  for (double alpha : {kPi / 4, 2 * kPi / 3, 1.0}) {
    const std::vector<Channel> m{gates::measurement(1)}, p{gates::phase(alpha)};
    for (int k = 0; k <= 6; ++k) {
      for (const char* w : {"0", "1"}) {
        for (const char* v : {"0", "1"}) {
          const auto eq = eq1({{0, Embedding::Whole, k}}, w, v);
          EXPECT_NEAR(probability_term(eq, m), probability_term(eq, p), 1e-10);
        }
      }
    }
  }
}

TEST(FamilyEquations, ConjugateBasisIndistinguishable) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> ex(0, 20), bit(0, 1);
  for (int t = 0; t < 50; ++t) {
    const auto eq = eq1({{0, Embedding::Whole, ex(rng)}}, bit(rng) ? "1" : "0", bit(rng) ? "1" : "0");
    const std::vector<Channel> h1{gates::hadamard(u(rng) * 2 * kPi)}, h2{gates::hadamard(u(rng) * 2 * kPi)};
    EXPECT_NEAR(probability_term(eq, h1), probability_term(eq, h2), 1e-10);
    const double a = u(rng) * kPi, th = u(rng) * kPi / 2, ph = u(rng) * 2 * kPi;
    const std::vector<Channel> r1{gates::rotation(a, th, ph)}, r2{gates::rotation(-a, th, ph)};
    EXPECT_NEAR(probability_term(eq, r1), probability_term(eq, r2), 1e-10);
  }
}

TEST(Json, RoundTrip) {
  for (const auto& f : {Family::hadamard(), Family::hadamard_cnot(), Family::hadamard_phase_cnot(),
                        Family::r_alpha_theta({2, 3}, kPi / 3)}) {
    const EquationSet s = family_equations(f);
    const auto j = to_json(s);
    const EquationSet back = equation_set_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.equations(), s.equations());
    EXPECT_EQ(j["d"], s.d());
  }
  const auto e = to_json(eq1({{0, Embedding::Whole, 2}}, "1", "0"));
  EXPECT_EQ(e["program"][0]["embed"], "whole");
  EXPECT_EQ(e["w"], "1");
  EXPECT_THROW(equation_from_json(nlohmann::json{{"n", 1}}), DomainError);
  auto bad = e;
  bad["program"][0]["embed"] = "diagonal";
  EXPECT_THROW(equation_from_json(bad), DomainError);
}

TEST(SnapConstant, Rationals) {
  EXPECT_EQ(snap_constant(0.4375 + 1e-14), 0.4375);
  EXPECT_EQ(snap_constant(1.0 / 3.0 + 2e-16), 1.0 / 3.0);
  const double r = 0.5 + 0.5 * std::cos(kPi / 4);
  EXPECT_EQ(snap_constant(r), r);
}
