// Acceptance suite: one PASS/FAIL line per criterion, diagnostics indented.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dholo/cli.hpp"
#include "dholo/holonomy.hpp"
#include "dholo/measurement.hpp"
#include "dholo/overlap.hpp"
#include "dholo/qec.hpp"
#include "dholo/synthesis.hpp"
#include "dholo/two_qubit.hpp"
#include "oracles.hpp"

using namespace dholo;
using dholo::cli::Json;

namespace {


struct Check {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Json cli_json(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return code == 0 || code == 4 ? Json::parse(out.str()) : Json();
}

Direction random_direction(std::mt19937_64& rng) {
  const auto a = oracle::random_angles(rng);
  return Direction(a.theta, a.phi);
}

MeasurementPath z_cycle(double varphi) {
  return MeasurementPath({Direction(0, 0), Direction(kPi / 2, kPi), Direction(kPi / 2, varphi), Direction(0, 0)});
}

// AC1
Check angle_table() {
  Check c;
  int code = 0;
  const Json t = cli_json({"synth", "--gate", "T", "--j", "3/2"}, code);
  const double t_az = t["results"]["vertices"][2][1].get<double>();
  c.require(std::abs(t_az - 1.4405) <= 1e-6, fmt("T third-vertex azimuth %.12f vs 1.4405 (diff %.3e)", t_az, t_az - 1.4405));

  const double phi_s = std::atan((3 + std::sqrt(17.0)) / 2);
  const Json s = cli_json({"synth", "--gate", "S", "--j", "3/2"}, code);
  const double s_az = s["results"]["vertices"][2][1].get<double>();
  c.require(std::abs(s_az - phi_s) <= 1e-9, fmt("S third-vertex azimuth %.12f vs arctan((3+sqrt17)/2) = %.12f", s_az, phi_s));

  const Json h = cli_json({"synth", "--gate", "H", "--j", "3/2"}, code);
  const double h_az = h["results"]["vertices"][5][1].get<double>();
  c.require(std::abs(h_az - std::atan(std::sqrt(2.0))) <= 1e-9,
            fmt("H sixth-vertex azimuth %.12f vs arctan(sqrt2) = %.12f", h_az, std::atan(std::sqrt(2.0))));

  const Json tt = cli_json({"synth", "--gate", "T", "--paper-table"}, code);
  const Json st = cli_json({"synth", "--gate", "S", "--paper-table"}, code);
  c.note(fmt("relative phase +pi/4 root: %.12f (realizes T^dagger, fidelity to T^dagger %.15f)",
             tt["results"]["vertices"][2][1].get<double>(), tt["results"]["target_fidelity"].get<double>()));
  c.note(fmt("relative phase +pi/2 root: %.12f (realizes S^dagger, fidelity to S^dagger %.15f)",
             st["results"]["vertices"][2][1].get<double>(), st["results"]["target_fidelity"].get<double>()));
  c.note(fmt("T target fidelity %.15f, S target fidelity %.15f", t["results"]["target_fidelity"].get<double>(),
             s["results"]["target_fidelity"].get<double>()));
  return c;
}

// AC2
Check gate_correctness() {
  Check c;
  const SpinJ j(3);
  const double tol = 1 - 1e-8;
  const std::pair<CliffordT, GateKind> gates[] = {{CliffordT::T, GateKind::T}, {CliffordT::S, GateKind::S}, {CliffordT::H, GateKind::H}};
  const char* names[] = {"T", "S", "H"};
  for (int g = 0; g < 3; ++g) {
    const double f = fidelity_up_to_phase(synth_clifford_t(1, gates[g].first).composed_holonomy(j), GateSpec{gates[g].second}.target());
    c.require(f >= tol, std::string(names[g]) + fmt(" fidelity %.15f", f));
  }
  std::mt19937_64 rng(2024);
  double worst = 1.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix2 u = oracle::random_su2(rng);
    worst = std::min(worst, fidelity_up_to_phase(compile_su2(1, u).composed_holonomy(j), u));
  }
  c.require(worst >= tol, fmt("100 random SU(2) targets, worst fidelity %.15f", worst));
  return c;
}

// AC3
Check transition_amplitudes() {
  Check c;
  const SpinJ j(3);
  const double p0 = survival_probability(j, z_cycle(0), default_input());
  const double p1 = survival_probability(j, z_cycle(kPi / 2), default_input());
  c.require(std::abs(p0 - 1.0 / 16) <= 1e-12, fmt("survival at 0: %.16f (1/16 diff %.2e)", p0, p0 - 1.0 / 16));
  c.require(std::abs(p1 - 1.0 / 64) <= 1e-12, fmt("survival at pi/2: %.16f (1/64 diff %.2e)", p1, p1 - 1.0 / 64));

  std::mt19937_64 rng(7);
  double spread = 0.0;
  for (double varphi : {0.0, kPi / 2, 1.0}) {
    const auto h = holonomy(j, z_cycle(varphi));
    double lo = 1, hi = 0;
    for (int i = 0; i < 100; ++i) {
      const double p = h.survival(oracle::random_state(rng));
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    spread = std::max(spread, hi - lo);
  }
  c.require(spread <= 1e-10, fmt("input spread over 100 random inputs: %.2e", spread));

  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double varphi = 2 * kPi * k / 64;
    worst = std::max(worst, std::abs(survival_probability(j, z_cycle(varphi), default_input()) -
                                     transition_amplitude_closed_form(1, varphi)));
  }
  c.require(worst <= 1e-12, fmt("64-point grid, max |sim - closed form| = %.2e", worst));
  return c;
}

// AC4
Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(11);
  for (int tj : {3, 5, 7, 9}) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto a = oracle::random_angles(rng), b = oracle::random_angles(rng);
      const Matrix2 m = overlap_matrix(SpinJ(tj), Direction(a.theta, a.phi), Direction(b.theta, b.phi)).m;
      const oracle::Mat ref = oracle::frame(tj, a).adjoint() * oracle::frame(tj, b);
      worst = std::max(worst, (m - ref).cwiseAbs().maxCoeff());
    }
    c.require(worst <= 1e-12, fmt("j=%g/2: max deviation %.2e over 200 pairs", tj, worst));
  }
  return c;
}

std::string monotone_report(const std::vector<ZenoRow>& rows, const std::function<double(const ZenoRow&)>& f,
                            bool decreasing, const char* name) {
  bool mono = true;
  for (std::size_t k = 1; k < rows.size(); ++k) mono = mono && (decreasing ? f(rows[k]) < f(rows[k - 1]) : f(rows[k]) > f(rows[k - 1]));
  return std::string(name) + (mono ? " monotone" : " NOT monotone");
}

// AC5
Check zeno() {
  Check c;
  const SpinJ j(3);
  const std::vector<int> steps{4, 16, 64, 256};
  const MeasurementPath zbase({Direction(0, 0), Direction(kPi / 2, 0), Direction(kPi / 2, kPi / 4), Direction(0, 0)});
  const MeasurementPath xbase({Direction(0, 0), Direction(kPi / 2, kPi), Direction(kPi / 4, kPi / 2), Direction(0, 0)});
  const auto z = zeno_sweep(j, zbase, default_input(), steps);
  const auto x = zeno_sweep(j, xbase, default_input(), steps);
  for (std::size_t k = 0; k < z.size(); ++k)
    c.note(fmt("z N=%g: ", z[k].steps_per_leg) + fmt("phase %.10f survival %.10f offdiag %.3e", z[k].relative_phase,
                                                      z[k].survival_probability, z[k].max_offdiag));
  for (std::size_t k = 0; k < x.size(); ++k)
    c.note(fmt("x N=%g: ", x[k].steps_per_leg) + fmt("phase %.10f survival %.10f offdiag %.3e", x[k].relative_phase,
                                                      x[k].survival_probability, x[k].max_offdiag));
  const auto& last = z.back();
  c.require(std::abs(last.relative_phase + 3 * kPi / 4) <= 0.02,
            fmt("z phase at N=256: %.10f vs -3pi/4 (diff %.2e)", last.relative_phase, last.relative_phase + 3 * kPi / 4));
  c.require(last.survival_probability >= 0.99, fmt("z survival at N=256: %.6f (needs >= 0.99)", last.survival_probability));
  c.require(last.max_offdiag <= 0.02, fmt("z max off-diagonal at N=256: %.3e", last.max_offdiag));
  c.require(x.back().max_offdiag <= 0.02, fmt("x max off-diagonal at N=256: %.3e", x.back().max_offdiag));
  const double target = -3 * kPi / 4;
  c.note(monotone_report(z, [&](const ZenoRow& r) { return std::abs(r.relative_phase - target); }, true, "z phase error") + ", " +
         monotone_report(z, [](const ZenoRow& r) { return r.survival_probability; }, false, "z survival") + ", " +
         monotone_report(z, [](const ZenoRow& r) { return r.max_offdiag; }, true, "z off-diagonal") + ", " +
         monotone_report(x, [](const ZenoRow& r) { return r.max_offdiag; }, true, "x off-diagonal"));
  return c;
}

// AC6
Check monte_carlo() {
  Check c;
  const SpinJ j(3);
  const auto path = synth_clifford_t(1, CliffordT::T).segments[0];
  SimConfig cfg;
  cfg.shots = 100000;
  cfg.seed = 20240601;
  const auto stats = run_sequence(j, path, default_input(), cfg);
  const double p = survival_probability(j, path, default_input());
  const double sigma = std::sqrt(p * (1 - p) / cfg.shots);
  c.require(std::abs(stats.empirical_success_rate - p) <= 4 * sigma,
            fmt("rate %.6f vs analytic %.6f (%.2f sigma)", stats.empirical_success_rate, p,
                std::abs(stats.empirical_success_rate - p) / sigma));
  c.require(stats.min_fidelity >= 1 - 1e-9, fmt("min conditional fidelity %.15f (mean %.15f)", stats.min_fidelity, stats.final_fidelity));
  return c;
}

// AC7
Check entanglement() {
  Check c;
  const SpinJ j(3);
  const auto path = synth_clifford_t(1, CliffordT::T).segments[0];
  const double h = 1 / std::sqrt(2.0);
  const auto max_ent = two_qubit_gate_action(j, path, Vector2(h, h), Vector2(h, h), AuxPair::stretched());
  c.require(concurrence(max_ent) >= 1 - 1e-10, fmt("a=b=c=d: concurrence %.15f", concurrence(max_ent)));
  const auto product = two_qubit_gate_action(j, path, Vector2(1, 0), Vector2(h, h), AuxPair::stretched());
  c.require(concurrence(product) <= 1e-12, fmt("a=1: concurrence %.2e", concurrence(product)));
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vector2 psi = oracle::random_state(rng), psi_t = oracle::random_state(rng);
    const auto s = two_qubit_gate_action(j, path, psi, psi_t, AuxPair::stretched());
    const double ac = std::abs(psi(0) * psi_t(0)), bd = std::abs(psi(1) * psi_t(1));
    worst = std::max(worst, std::abs(concurrence(s) - 2 * ac * bd / (ac * ac + bd * bd)));
  }
  c.require(worst <= 1e-10, fmt("100 random inputs, max |C - 2|ac bd|/(|ac|^2+|bd|^2)| = %.2e", worst));
  return c;
}

// AC8
Check qec_properties() {
  Check c;
  std::mt19937_64 rng(88);
  double worst_fid = 1.0;
  for (int i = 0; i < 50; ++i) {
    const Direction d = random_direction(rng);
    const Vector2 logical = oracle::random_state(rng);
    for (int q = 0; q < 3; ++q) worst_fid = std::min(worst_fid, bitflip_encode_and_correct(d, logical, q).fidelity);
  }
  c.require(worst_fid >= 1 - 1e-12, fmt("bit-flip: 50 directions x 3 flips, worst fidelity %.15f", worst_fid));
  double violation = 0.0, defect = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Direction a = random_direction(rng), b = random_direction(rng);
    violation = std::max(violation, shor_overlap_elements(a, b).condition_violation());
    defect = std::max(defect, shor_unitarity_check(a, b).proportionality_defect);
  }
  c.require(violation <= 1e-10, fmt("Shor sign/conjugation conditions, max violation %.2e", violation));
  c.require(defect <= 1e-10, fmt("Shor proportionality to unitary, max defect %.2e", defect));
  return c;
}

// AC9
Check multi_root() {
  Check c;
  for (int n = 1; n <= 3; ++n) {
    for (double target : {kPi / 4, kPi / 2, kPi}) {
      const auto roots = solve_subspace_angle(n, target);
      std::vector<Matrix2> gates;
      for (double r : roots) gates.push_back(holonomy(SpinJ::half_odd(n), rotation_path(n, Axis::Z, r)).u_d);
      double worst = 1.0;
      for (std::size_t a = 0; a < gates.size(); ++a)
        for (std::size_t b = a + 1; b < gates.size(); ++b) worst = std::min(worst, fidelity_up_to_phase(gates[a], gates[b]));
      c.require(roots.size() >= 2 && worst >= 1 - 1e-9,
                fmt("n=%g target=%.6f: ", n, target) + std::to_string(roots.size()) + fmt(" roots, worst pairwise fidelity %.15f", worst));
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Check()> run;
  };
  const std::vector<Entry> entries{
      {"AC1", "angle table", 1, angle_table},
      {"AC2", "gate correctness", 5, gate_correctness},
      {"AC3", "transition amplitudes", 1e9, transition_amplitudes},
      {"AC4", "closed-form overlaps vs brute force", 5, oracle_equivalence},
      {"AC5", "Zeno convergence", 30, zeno},
      {"AC6", "Monte Carlo consistency", 60, monte_carlo},
      {"AC7", "two-qubit entanglement", 1e9, entanglement},
      {"AC8", "QEC properties", 30, qec_properties},
      {"AC9", "multi-root equivalence", 1e9, multi_root},
  };
  int failures = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget_s < 1e9) c.require(secs < e.budget_s, fmt("runtime %.3f s (budget %g s)", secs, e.budget_s));
    std::printf("%s %s  %s  (%.3f s)\n", e.id, c.pass ? "PASS" : "FAIL", e.title, secs);
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    failures += c.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failures, entries.size());
  return failures == 0 ? 0 : 1;
}
