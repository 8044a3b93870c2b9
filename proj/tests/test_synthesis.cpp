#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dholo/errors.hpp"
#include "dholo/synthesis.hpp"
#include "oracles.hpp"

using namespace dholo;

namespace {


double wrap(double x) { return std::remainder(x, 2 * kPi); }

// arg(D00 conj(D11)) of the z cycle from explicit frame products.
double oracle_phase(int n, double varphi) {
  const oracle::Mat d = oracle::holonomy(2 * n + 1, {{0, 0}, {kPi / 2, kPi}, {kPi / 2, varphi}, {0, 0}});
  return std::arg(d(0, 0) * std::conj(d(1, 1)));
}

// Roots of oracle_phase == target by a dense scan and bisection.
std::vector<double> oracle_roots(int n, double target) {
  auto g = [&](double v) { return wrap(oracle_phase(n, v) - target); };
  std::vector<double> roots;
  const int cells = 6000;
  for (int k = 0; k < cells; ++k) {
    double a = 2 * kPi * k / cells, b = 2 * kPi * (k + 1) / cells;
    double ga = g(a), gb = g(b);
    if (ga == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (ga * gb > 0 || std::abs(ga - gb) > 1.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      const double gm = g(m);
      if ((gm < 0) == (ga < 0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

}  // namespace

TEST(RelativePhase, MatchesFrameProductOracle) {
  for (int n = 0; n <= 3; ++n)
    for (int k = 1; k < 40; ++k) {
      const double v = 2 * kPi * k / 40 + 0.01;
      EXPECT_NEAR(wrap(relative_phase(n, v) - oracle_phase(n, v)), 0.0, 1e-10) << n << " " << v;
    }
}

TEST(RelativePhase, TabulatedAngles) {
  const double phi_s = std::atan((3 + std::sqrt(17.0)) / 2);
  EXPECT_NEAR(relative_phase(1, phi_s), kPi / 2, 1e-12);
  const double phi_t =
      2 * std::acos(1 / (2 * std::sqrt(6 / (std::sqrt(6 * (std::sqrt(2.0) - std::sqrt(36 * std::sqrt(2.0) + 70) + 10)) + 12))));
  EXPECT_NEAR(phi_t, 1.438401608233, 1e-12);
  EXPECT_NEAR(relative_phase(1, phi_t), kPi / 4, 1e-12);
  EXPECT_NEAR(std::abs(relative_phase(1, std::atan(std::sqrt(2.0)))), kPi, 1e-12);
}

TEST(SolveSubspaceAngle, AgreesWithOracleRoots) {
  for (int n = 1; n <= 3; ++n) {
    for (double target : {kPi / 4, kPi / 2, kPi, -kPi / 4, -kPi / 2, 2.0}) {
      const auto roots = solve_subspace_angle(n, target);
      const auto ref = oracle_roots(n, target);
      ASSERT_EQ(roots.size(), ref.size()) << n << " " << target;
      for (std::size_t k = 0; k < roots.size(); ++k) EXPECT_NEAR(roots[k], ref[k], 1e-9);
      EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end()));
    }
  }
}

TEST(SolveSubspaceAngle, KnownRootsForThreeHalves) {
  const auto t = solve_subspace_angle(1, kPi / 4);
  ASSERT_FALSE(t.empty());
  EXPECT_NEAR(t[0], 1.4384016082329931, 1e-9);
  const auto t_dag = solve_subspace_angle(1, -kPi / 4);
  ASSERT_FALSE(t_dag.empty());
  EXPECT_NEAR(t_dag[0], 0.2603043631368206, 1e-9);
}

TEST(SolveSubspaceAngle, SpinHalfHasOnlyTrivialRoot) {
  EXPECT_EQ(solve_subspace_angle(0, 0.0), std::vector<double>{0.0});
  EXPECT_TRUE(solve_subspace_angle(0, 0.3).empty());
  try {
    synth_rotation(0, Axis::Z, 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoRoot);
  }
}

TEST(SynthRotation, AllAxesRealizeTarget) {
  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int n = 1; n <= 3; ++n)
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z})
      for (int i = 0; i < 6; ++i) {
        const double angle = u(rng);
        const auto seq = synth_rotation(n, axis, angle);
        const Matrix2 got = seq.composed_holonomy(SpinJ::half_odd(n));
        EXPECT_GE(fidelity_up_to_phase(got, axis_rotation(axis, angle)), 1 - 1e-9) << n << to_string(axis) << angle;
        EXPECT_GE(fidelity_up_to_phase(got, seq.predicted_unitary), 1 - 1e-9);
      }
}

TEST(SynthRotation, ZeroAngleIsIdentity) {
  const auto seq = synth_rotation(1, Axis::Z, 0.0);
  EXPECT_GE(fidelity_up_to_phase(seq.composed_holonomy(SpinJ(3)), Matrix2::Identity()), 1 - 1e-12);
}

TEST(AxisRotation, MatchesExponential) {
  const double a = 0.83;
  Matrix2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  EXPECT_LE((axis_rotation(Axis::X, a) - oracle::expm(Complex(0, -a / 2) * sx)).norm(), 1e-14);
  EXPECT_LE((axis_rotation(Axis::Y, a) - oracle::expm(Complex(0, -a / 2) * sy)).norm(), 1e-14);
  EXPECT_LE((axis_rotation(Axis::Z, a) - oracle::expm(Complex(0, -a / 2) * sz)).norm(), 1e-14);
}

TEST(CliffordT, GatesMatchTargets) {
  for (int n = 1; n <= 3; ++n) {
    const SpinJ j = SpinJ::half_odd(n);
    EXPECT_GE(fidelity_up_to_phase(synth_clifford_t(n, CliffordT::T).composed_holonomy(j), GateSpec{GateKind::T}.target()), 1 - 1e-9);
    EXPECT_GE(fidelity_up_to_phase(synth_clifford_t(n, CliffordT::S).composed_holonomy(j), GateSpec{GateKind::S}.target()), 1 - 1e-9);
    EXPECT_GE(fidelity_up_to_phase(synth_clifford_t(n, CliffordT::H).composed_holonomy(j), GateSpec{GateKind::H}.target()), 1 - 1e-9);
  }
}

TEST(CliffordT, HadamardSequenceLayout) {
  const auto seq = synth_clifford_t(1, CliffordT::H);
  const auto v = seq.flattened_vertices();
  ASSERT_EQ(v.size(), 7u);
  EXPECT_NEAR(v[1].theta(), std::atan((3 + std::sqrt(17.0)) / 2), 1e-9);
  EXPECT_NEAR(v[1].phi(), kPi, 1e-12);
  EXPECT_NEAR(v[2].theta(), kPi / 2, 1e-12);
  EXPECT_NEAR(v[2].phi(), kPi / 2, 1e-12);
  EXPECT_NEAR(v[4].phi(), kPi, 1e-12);
  EXPECT_NEAR(v[5].phi(), std::atan(std::sqrt(2.0)), 1e-9);

  const auto alt = synth_clifford_t(1, CliffordT::H, {.h_alt_fifth_vertex = true});
  EXPECT_NEAR(alt.flattened_vertices()[4].phi(), 0.0, 1e-12);
  EXPECT_GE(fidelity_up_to_phase(alt.composed_holonomy(SpinJ(3)), GateSpec{GateKind::H}.target()), 1 - 1e-9);
}

TEST(CliffordT, TabulatedRowsRealizeAdjoints) {
  const auto t = synth_clifford_t(1, CliffordT::T, {.paper_table = true});
  EXPECT_NEAR(t.branch_choices[0].varphi, 1.4384016082329931, 1e-9);
  EXPECT_GE(fidelity_up_to_phase(t.composed_holonomy(SpinJ(3)), GateSpec{GateKind::T}.target().adjoint()), 1 - 1e-9);
  const auto s = synth_clifford_t(1, CliffordT::S, {.paper_table = true});
  EXPECT_NEAR(s.branch_choices[0].varphi, std::atan((3 + std::sqrt(17.0)) / 2), 1e-9);
  EXPECT_GE(fidelity_up_to_phase(s.composed_holonomy(SpinJ(3)), GateSpec{GateKind::S}.target().adjoint()), 1 - 1e-9);
}

TEST(MultiRoot, EveryRootGivesSameGate) {
  for (int n = 1; n <= 3; ++n)
    for (double target : {kPi / 4, kPi / 2, kPi}) {
      const auto roots = solve_subspace_angle(n, target);
      ASSERT_GE(roots.size(), 2u);
      const Matrix2 first = holonomy(SpinJ::half_odd(n), rotation_path(n, Axis::Z, roots[0])).u_d;
      for (double r : roots)
        EXPECT_GE(fidelity_up_to_phase(first, holonomy(SpinJ::half_odd(n), rotation_path(n, Axis::Z, r)).u_d), 1 - 1e-9);
    }
}

TEST(Zyz, RoundTripsRandomUnitaries) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Matrix2 u = oracle::random_su2(rng) * std::polar(1.0, 0.37 * i);
    const auto e = zyz_decompose(u);
    const Matrix2 back = axis_rotation(Axis::Z, e.alpha) * axis_rotation(Axis::Y, e.beta) * axis_rotation(Axis::Z, e.gamma);
    EXPECT_GE(fidelity_up_to_phase(u, back), 1 - 1e-12);
    EXPECT_GE(e.beta, 0.0);
    EXPECT_LE(e.beta, kPi);
  }
}

TEST(Zyz, DiagonalAndAntidiagonalEdgeCases) {
  for (const Matrix2& u : std::vector<Matrix2>{axis_rotation(Axis::Z, 0.4), axis_rotation(Axis::Y, kPi) * axis_rotation(Axis::Z, 0.9),
                           Matrix2(Matrix2::Identity())}) {
    const auto e = zyz_decompose(u);
    const Matrix2 back = axis_rotation(Axis::Z, e.alpha) * axis_rotation(Axis::Y, e.beta) * axis_rotation(Axis::Z, e.gamma);
    EXPECT_GE(fidelity_up_to_phase(u, back), 1 - 1e-12);
  }
}

TEST(Zyz, RejectsNonUnitary) {
  Matrix2 m;
  m << 1, 1, 0, 1;
  try {
    zyz_decompose(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnitary);
  }
}

TEST(CompileSu2, RandomTargets) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 20; ++i) {
    const Matrix2 u = oracle::random_su2(rng);
    const auto seq = compile_su2(1, u);
    EXPECT_EQ(seq.segments.size(), 3u);
    EXPECT_GE(fidelity_up_to_phase(seq.composed_holonomy(SpinJ(3)), u), 1 - 1e-8);
  }
}

TEST(CompileSu2, ProductOfGates) {
  const Matrix2 th = GateSpec{GateKind::T}.target() * GateSpec{GateKind::H}.target();
  EXPECT_GE(fidelity_up_to_phase(compile_su2(2, th).composed_holonomy(SpinJ(5)), th), 1 - 1e-8);
}

TEST(GateSpec, EulerTarget) {
  GateSpec g{GateKind::ArbitrarySU2, 0.0, {0.3, 1.1, -0.4}};
  const Matrix2 ref = axis_rotation(Axis::Z, 0.3) * axis_rotation(Axis::Y, 1.1) * axis_rotation(Axis::Z, -0.4);
  EXPECT_GE(fidelity_up_to_phase(g.target(), ref), 1 - 1e-14);
}
