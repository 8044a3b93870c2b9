#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dholo/cli.hpp"
#include "dholo/errors.hpp"
#include "dholo/measurement.hpp"
#include "dholo/overlap.hpp"
#include "dholo/qec.hpp"
#include "dholo/synthesis.hpp"
#include "dholo/two_qubit.hpp"

namespace dholo::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitContract = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IndexOutOfRange:
      return kExitUsage;
    case ErrorKind::NoRoot:
      return kExitSolver;
    default:
      return kExitContract;
  }
}

std::string spin_text(SpinJ j) {
  return j.twice_j() % 2 ? std::to_string(j.twice_j()) + "/2" : std::to_string(j.twice_j() / 2);
}

Vector2 parse_input(const std::string& text) {
  const auto v = parse_number_list(text);
  if (v.size() != 2) throw Error(ErrorKind::Parse, "input must be 'a,b'");
  Vector2 psi(v[0], v[1]);
  if (!(psi.norm() > 0.0)) throw Error(ErrorKind::Parse, "input must be nonzero");
  return psi / psi.norm();
}

Direction random_direction(RngStream& rng) {
  const double theta = std::acos(std::clamp(1.0 - 2.0 * rng.uniform(), -1.0, 1.0));
  return Direction(theta, kTwoPi * rng.uniform());
}

Json vertices_json(const std::vector<Direction>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(direction_json(v));
  return out;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "postselect") return Strategy::Postselect;
  if (s == "restart") return Strategy::Restart;
  throw Error(ErrorKind::Parse, "strategy must be postselect or restart");
}

unsigned threads_from_env() {
  if (const char* t = std::getenv("THREADS")) {
    try {
      const long v = std::stol(t);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

Json stats_json(const RunStats& s) {
  return {{"shots", s.shots},
          {"successes", s.successes},
          {"total_attempts", s.total_attempts},
          {"exhausted", s.exhausted},
          {"empirical_success_rate", s.empirical_success_rate},
          {"mean_restarts", s.mean_restarts},
          {"final_fidelity", s.final_fidelity},
          {"min_fidelity", s.min_fidelity}};
}

MeasurementPath zeno_base_path(Axis axis, double varphi) {
  const Direction pole(0.0, 0.0);
  switch (axis) {
    case Axis::Z:
      return MeasurementPath({pole, Direction(kPi / 2, 0.0), Direction(kPi / 2, varphi), pole});
    case Axis::X:
      return MeasurementPath({pole, Direction(kPi / 2, kPi), Direction::folded(varphi, kPi / 2), pole});
    case Axis::Y:
      return MeasurementPath({pole, Direction::folded(varphi, 0.0), Direction(kPi / 2, kPi / 2), pole});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown axis");
}

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw Error(ErrorKind::Parse, "axis must be x, y or z");
}

struct Options {
  std::string format = "json";
  std::string j = "3/2";
  // overlap
  std::string a, b, xi;
  // synth
  std::string gate, angle = "0", euler;
  bool paper_table = false;
  bool alt_h = false;
  // zeno
  std::string phi = "pi/4", axis = "z", steps = "1,4,16,64,256", out_csv;
  // simulate / pipeline
  std::string path_file, strategy = "postselect", input;
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  std::size_t max_restarts = 100;
  unsigned threads = 0;
  double error_probability = 0.1;
  bool no_correct = false;
  // qec
  std::string direction = "0,0", logical = "0.6,0.8", frame = "rotated";
  std::size_t random = 0;
  std::size_t samples = 100;
};

struct Emitted {
  Json envelope;
  int code = kExitOk;
};

Emitted cmd_overlap(const Options& o) {
  const SpinJ j = parse_spin(o.j);
  const Direction a = parse_direction(o.a);
  const Direction b = parse_direction(o.b);
  Json params = {{"j", spin_text(j)}, {"a", direction_json(a)}, {"b", direction_json(b)}};
  const auto rs = rs_coefficients(j, a, b);
  OverlapMatrix m;
  if (o.xi.empty()) {
    m = overlap_matrix(j, a, b);
  } else {
    const auto parts = parse_number_list(o.xi);
    if (parts.size() > 2) throw Error(ErrorKind::Parse, "xi must be 're' or 're,im'");
    const Complex xi(parts[0], parts.size() == 2 ? parts[1] : 0.0);
    if (std::abs(xi) > 1.0 + 1e-12) throw Error(ErrorKind::Parse, "|xi| must not exceed 1");
    params["xi"] = complex_json(xi);
    m = two_qubit_overlap(j, a, b, xi);
  }
  Json results = {{"m", matrix_json(m.m)},
                  {"kappa", m.kappa},
                  {"r", complex_json(rs.r)},
                  {"s", complex_json(rs.s)},
                  {"scalar_times_unitary", m.scalar_times_unitary}};
  results["u"] = m.scalar_times_unitary ? matrix_json(m.u) : Json(nullptr);
  return {envelope("overlap", params, results), kExitOk};
}

Emitted cmd_synth(const Options& o) {
  const SpinJ j = parse_spin(o.j);
  if (!j.is_gate_valid()) throw Error(ErrorKind::InvalidArgument, "synthesis needs half-odd-integer j");
  const int n = j.n();
  Json params = {{"j", spin_text(j)}, {"gate", o.gate}};
  SynthesizedSequence seq;
  Matrix2 target;
  if (o.gate == "T" || o.gate == "S" || o.gate == "H") {
    const CliffordT g = o.gate == "T" ? CliffordT::T : o.gate == "S" ? CliffordT::S : CliffordT::H;
    seq = synth_clifford_t(n, g, {o.alt_h, o.paper_table});
    target = GateSpec{o.gate == "T" ? GateKind::T : o.gate == "S" ? GateKind::S : GateKind::H}.target();
    params["paper_table"] = o.paper_table;
    params["alt_h"] = o.alt_h;
    if (o.paper_table && o.gate != "H") target.adjointInPlace();
  } else if (o.gate == "rz" || o.gate == "rx" || o.gate == "ry") {
    const double angle = parse_angle(o.angle);
    const Axis axis = o.gate == "rz" ? Axis::Z : o.gate == "rx" ? Axis::X : Axis::Y;
    params["angle"] = angle;
    seq = synth_rotation(n, axis, angle);
    target = axis_rotation(axis, angle);
  } else if (o.gate == "su2") {
    const auto e = parse_number_list(o.euler);
    if (e.size() != 3) throw Error(ErrorKind::Parse, "euler must be 'alpha,beta,gamma'");
    GateSpec spec{GateKind::ArbitrarySU2, 0.0, {e[0], e[1], e[2]}};
    params["euler"] = e;
    target = spec.target();
    seq = compile_su2(n, target);
  } else {
    throw Error(ErrorKind::Parse, "gate must be one of T, S, H, rz, rx, ry, su2");
  }

  const Matrix2 composed = seq.composed_holonomy(j);
  const double recomposition = fidelity_up_to_phase(composed, seq.predicted_unitary);
  const double target_fidelity = fidelity_up_to_phase(composed, target);
  Json segments = Json::array();
  Json solved = Json::array();
  for (std::size_t k = 0; k < seq.segments.size(); ++k) {
    const auto& c = seq.branch_choices[k];
    segments.push_back({{"axis", to_string(c.axis)},
                        {"target_phase", c.target_phase},
                        {"varphi", c.varphi},
                        {"root_index", c.root_index},
                        {"roots", c.all_roots},
                        {"vertices", vertices_json(seq.segments[k].vertices())}});
    solved.push_back(c.varphi);
  }
  Json results = {{"vertices", vertices_json(seq.flattened_vertices())},
                  {"segments", segments},
                  {"solved_angles", solved},
                  {"predicted_unitary", matrix_json(seq.predicted_unitary)},
                  {"composed_holonomy", matrix_json(composed)},
                  {"target_unitary", matrix_json(target)},
                  {"recomposition_fidelity", recomposition},
                  {"target_fidelity", target_fidelity}};
  const bool ok = recomposition >= 1.0 - 1e-8 && target_fidelity >= 1.0 - 1e-8;
  return {envelope("synth", params, results), ok ? kExitOk : kExitContract};
}

Emitted cmd_zeno(const Options& o) {
  const SpinJ j = parse_spin(o.j);
  const double varphi = parse_angle(o.phi);
  const Axis axis = parse_axis(o.axis);
  std::vector<int> steps;
  for (double s : parse_number_list(o.steps)) {
    if (s < 1 || s != std::floor(s)) throw Error(ErrorKind::Parse, "steps must be positive integers");
    steps.push_back(static_cast<int>(s));
  }
  const Vector2 input = o.input.empty() ? default_input() : parse_input(o.input);
  const MeasurementPath base = zeno_base_path(axis, varphi);
  const auto rows = zeno_sweep(j, base, input, steps);

  Json params = {{"j", spin_text(j)}, {"phi", varphi}, {"axis", o.axis}, {"steps", steps},
                 {"input", {input(0).real(), input(1).real()}}};
  Json table = Json::array();
  for (const auto& r : rows)
    table.push_back({{"N", r.steps_per_leg},
                     {"relative_phase", r.relative_phase},
                     {"survival_probability", r.survival_probability},
                     {"max_offdiag", r.max_offdiag}});
  Json results = {{"base_vertices", vertices_json(base.vertices())}, {"rows", table}};
  if (axis == Axis::Z) results["predicted_relative_phase"] = zeno_predicted_phase(j, varphi);

  if (!o.out_csv.empty()) {
    std::ofstream csv(o.out_csv);
    if (!csv) throw Error(ErrorKind::Parse, "cannot write '" + o.out_csv + "'");
    csv << "N,relative_phase,survival_probability,max_offdiag\n";
    for (const auto& r : rows)
      csv << r.steps_per_leg << ',' << Json(r.relative_phase).dump() << ','
          << Json(r.survival_probability).dump() << ',' << Json(r.max_offdiag).dump() << '\n';
    params["out"] = o.out_csv;
  }
  return {envelope("zeno", params, results), kExitOk};
}

SimConfig sim_config(const Options& o) {
  SimConfig cfg;
  cfg.shots = o.shots;
  cfg.seed = o.seed;
  cfg.strategy = parse_strategy(o.strategy);
  cfg.max_restarts = o.max_restarts;
  cfg.threads = o.threads ? o.threads : threads_from_env();
  return cfg;
}

Json sim_params(const Options& o, SpinJ j, const MeasurementPath& path, const Vector2& input) {
  return {{"j", spin_text(j)},
          {"path", o.path_file},
          {"vertices", vertices_json(path.vertices())},
          {"shots", o.shots},
          {"seed", o.seed},
          {"strategy", o.strategy},
          {"max_restarts", o.max_restarts},
          {"input", {input(0).real(), input(1).real()}}};
}

Emitted cmd_simulate(const Options& o) {
  const SpinJ j = parse_spin(o.j);
  const MeasurementPath path = read_path_file(o.path_file);
  const Vector2 input = o.input.empty() ? default_input() : parse_input(o.input);
  const SimConfig cfg = sim_config(o);
  const RunStats stats = run_sequence(j, path, input, cfg);
  Json results = stats_json(stats);
  results["analytic_survival"] = survival_probability(j, path, input);
  return {envelope("simulate", sim_params(o, j, path, input), results), kExitOk};
}

Emitted cmd_bitflip(const Options& o) {
  const Vector2 logical = parse_input(o.logical);
  ErrorFrame frame;
  if (o.frame == "rotated") frame = ErrorFrame::Rotated;
  else if (o.frame == "lab") frame = ErrorFrame::Lab;
  else throw Error(ErrorKind::Parse, "frame must be rotated or lab");

  std::vector<Direction> directions;
  if (o.random > 0) {
    for (std::size_t i = 0; i < o.random; ++i) {
      RngStream rng(o.seed, i);
      directions.push_back(random_direction(rng));
    }
  } else {
    directions.push_back(parse_direction(o.direction));
  }

  Json rows = Json::array();
  double min_fidelity = 1.0;
  for (const auto& d : directions) {
    for (int e = -1; e < 3; ++e) {
      const std::optional<int> error = e < 0 ? std::nullopt : std::optional<int>(e);
      const auto r = bitflip_encode_and_correct(d, logical, error, frame, o.seed);
      min_fidelity = std::min(min_fidelity, r.fidelity);
      rows.push_back({{"direction", direction_json(d)},
                      {"error_qubit", error ? Json(*error) : Json(nullptr)},
                      {"syndrome", r.syndrome},
                      {"corrected_qubit", r.corrected_qubit ? Json(*r.corrected_qubit) : Json(nullptr)},
                      {"fidelity", r.fidelity}});
    }
  }
  Json params = {{"logical", {logical(0).real(), logical(1).real()}},
                 {"frame", o.frame},
                 {"seed", o.seed}};
  if (o.random > 0) params["random"] = o.random;
  else params["direction"] = direction_json(directions.front());
  Json results = {{"rows", rows}, {"min_fidelity", min_fidelity}};
  const bool ok = frame == ErrorFrame::Lab || min_fidelity >= 1.0 - 1e-12;
  return {envelope("qec bitflip-demo", params, results), ok ? kExitOk : kExitContract};
}

Emitted cmd_shor_verify(const Options& o) {
  double max_violation = 0.0, max_defect = 0.0, max_discrepancy = 0.0;
  std::size_t singular = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    RngStream rng(o.seed, i);
    const Direction a = random_direction(rng);
    const Direction b = random_direction(rng);
    const auto m = shor_overlap_elements(a, b);
    max_violation = std::max(max_violation, m.condition_violation());
    max_discrepancy = std::max(max_discrepancy, m.discrepancy);
    try {
      max_defect = std::max(max_defect, shor_unitarity_check(a, b).proportionality_defect);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularInput) throw;
      ++singular;
    }
  }
  Json params = {{"samples", o.samples}, {"seed", o.seed}};
  Json results = {{"max_condition_violation", max_violation},
                  {"max_proportionality_defect", max_defect},
                  {"max_closed_form_discrepancy", max_discrepancy},
                  {"singular_samples", singular}};
  const bool ok = max_violation <= 1e-10 && max_defect <= 1e-10 && max_discrepancy <= 1e-10;
  return {envelope("qec shor-verify", params, results), ok ? kExitOk : kExitContract};
}

Emitted cmd_pipeline(const Options& o) {
  const SpinJ j(3);
  const MeasurementPath path = read_path_file(o.path_file);
  const Vector2 input = o.input.empty() ? default_input() : parse_input(o.input);
  if (o.error_probability < 0.0 || o.error_probability > 1.0)
    throw Error(ErrorKind::Parse, "error probability must lie in [0, 1]");
  ProtectedRunConfig cfg{sim_config(o), o.error_probability, !o.no_correct};
  const auto stats = run_protected_sequence(path, input, cfg);
  Json params = sim_params(o, j, path, input);
  params["error_probability"] = o.error_probability;
  params["correct"] = !o.no_correct;
  Json results = stats_json(stats.run);
  results["errors_injected"] = stats.errors_injected;
  results["corrections_applied"] = stats.corrections_applied;
  results["analytic_survival"] = survival_probability(j, path, input);
  return {envelope("qec pipeline", params, results), kExitOk};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete holonomies of spin coherent states", "dholo"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* overlap = app.add_subcommand("overlap", "Overlap matrix between two coherent-state frames");
  overlap->add_option("--j", o.j, "spin, e.g. 3/2");
  overlap->add_option("--a", o.a, "first direction theta,phi")->required();
  overlap->add_option("--b", o.b, "second direction theta,phi")->required();
  overlap->add_option("--xi", o.xi, "auxiliary overlap re[,im] for the two-qubit matrix");

  auto* synth = app.add_subcommand("synth", "Compile a gate into filtering cycles");
  synth->add_option("--gate", o.gate, "T, S, H, rz, rx, ry or su2")->required();
  synth->add_option("--j", o.j, "spin");
  synth->add_option("--angle", o.angle, "rotation angle");
  synth->add_option("--euler", o.euler, "alpha,beta,gamma for su2");
  synth->add_flag("--paper-table", o.paper_table, "solve T and S for the opposite phase sign");
  synth->add_flag("--alt-h", o.alt_h, "use (pi/2, 0) as the fifth H vertex");

  auto* zeno = app.add_subcommand("zeno", "Dense-measurement sweep");
  zeno->add_option("--j", o.j, "spin");
  zeno->add_option("--phi", o.phi, "wedge angle");
  zeno->add_option("--axis", o.axis, "x, y or z");
  zeno->add_option("--steps", o.steps, "comma-separated steps per leg");
  zeno->add_option("--input", o.input, "input amplitudes a,b");
  zeno->add_option("--out", o.out_csv, "CSV output file");

  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("path", o.path_file, "path file")->required();
    sub->add_option("--shots", o.shots, "number of shots");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--strategy", o.strategy, "postselect or restart");
    sub->add_option("--max-restarts", o.max_restarts, "restart cap");
    sub->add_option("--threads", o.threads, "worker threads (default THREADS or hardware)");
    sub->add_option("--input", o.input, "input amplitudes a,b");
  };
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of a filtering cycle");
  add_sim(simulate);
  simulate->add_option("--j", o.j, "spin");

  auto* qec = app.add_subcommand("qec", "Error-correction checks");
  qec->require_subcommand(1);
  qec->fallthrough();
  auto* bitflip = qec->add_subcommand("bitflip-demo", "Rotated bit-flip code syndrome table");
  bitflip->add_option("--d", o.direction, "frame direction theta,phi");
  bitflip->add_option("--random", o.random, "use this many random directions");
  bitflip->add_option("--logical", o.logical, "logical amplitudes a,b");
  bitflip->add_option("--frame", o.frame, "rotated or lab flips");
  bitflip->add_option("--seed", o.seed, "RNG seed");
  auto* shor = qec->add_subcommand("shor-verify", "Shor logical overlap structure");
  shor->add_option("--samples", o.samples, "random direction pairs");
  shor->add_option("--seed", o.seed, "RNG seed");
  auto* pipeline = qec->add_subcommand("pipeline", "j=3/2 cycle with bit-flip protection");
  add_sim(pipeline);
  pipeline->add_option("--error-probability", o.error_probability, "flip probability per vertex");
  pipeline->add_flag("--no-correct", o.no_correct, "skip the correction step");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Emitted result;
    if (*overlap) result = cmd_overlap(o);
    else if (*synth) result = cmd_synth(o);
    else if (*zeno) result = cmd_zeno(o);
    else if (*simulate) result = cmd_simulate(o);
    else if (*bitflip) result = cmd_bitflip(o);
    else if (*shor) result = cmd_shor_verify(o);
    else result = cmd_pipeline(o);
    out << (o.format == "csv" ? to_csv_text(result.envelope) : to_json_text(result.envelope));
    if (result.code != kExitOk) err << "error: numerical contract violated\n";
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace dholo::cli
