#include "dholo/qec.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "dholo/errors.hpp"
#include "dholo/overlap.hpp"

namespace dholo {

PhysicalRegister PhysicalRegister::from_amplitudes(int num_qubits, StateVector amplitudes) {
  if (num_qubits < 1 || amplitudes.size() != (Eigen::Index{1} << num_qubits))
    throw Error(ErrorKind::DimensionMismatch, "register size does not match qubit count");
  return {num_qubits, std::move(amplitudes)};
}

StateVector apply_single_qubit(const StateVector& v, int num_qubits, int qubit, const Matrix2& op) {
  if (qubit < 0 || qubit >= num_qubits)
    throw Error(ErrorKind::IndexOutOfRange, "qubit " + std::to_string(qubit) + " out of range");
  const Eigen::Index stride = Eigen::Index{1} << (num_qubits - 1 - qubit);
  StateVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i & stride) continue;
    const Complex a = v(i);
    const Complex b = v(i | stride);
    out(i) = op(0, 0) * a + op(0, 1) * b;
    out(i | stride) = op(1, 0) * a + op(1, 1) * b;
  }
  return out;
}

StateVector OperatorProduct::apply(const StateVector& v) const {
  StateVector out = v;
  for (const auto& f : factors) out = apply_single_qubit(out, num_qubits, f.qubit, f.op);
  return out;
}

ComplexMatrix OperatorProduct::dense() const {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < num_qubits; ++q) {
    ComplexMatrix site = Matrix2::Identity();
    for (const auto& f : factors)
      if (f.qubit == q) site = f.op * site;
    out = kron(out, site);
  }
  return out;
}

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2 axis_pauli(const Direction& d) {
  const double ct = std::cos(d.theta());
  const double st = std::sin(d.theta());
  Matrix2 m;
  m << ct, st * std::polar(1.0, -d.phi()), st * std::polar(1.0, d.phi()), -ct;
  return m;
}

Matrix2 rotated_pauli(const Direction& d, const Matrix2& pauli) {
  const Matrix2 r = rotation_full(SpinJ(1), d);
  return r * pauli * r.adjoint();
}

std::vector<OperatorProduct> rotated_syndrome_products(const Direction& d,
                                                       std::span<const std::pair<int, int>> pairs,
                                                       int num_qubits) {
  const Matrix2 n_sigma = axis_pauli(d);
  std::vector<OperatorProduct> out;
  for (const auto& [i, k] : pairs) {
    if (i < 0 || k < 0 || i >= num_qubits || k >= num_qubits)
      throw Error(ErrorKind::IndexOutOfRange, "syndrome pair index out of range");
    if (i == k) throw Error(ErrorKind::InvalidArgument, "syndrome pair indices must differ");
    out.push_back({num_qubits, {{i, n_sigma}, {k, n_sigma}}});
  }
  return out;
}

std::vector<ComplexMatrix> rotated_syndrome_ops(const Direction& d,
                                                std::span<const std::pair<int, int>> pairs,
                                                int num_qubits) {
  std::vector<ComplexMatrix> out;
  for (const auto& p : rotated_syndrome_products(d, pairs, num_qubits)) out.push_back(p.dense());
  return out;
}

int measure_involution(StateVector& state, const OperatorProduct& observable, RngStream& rng) {
  const StateVector flipped = observable.apply(state);
  const double expectation = state.dot(flipped).real() / state.squaredNorm();
  const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
  const int outcome = rng.uniform() < p_plus ? 1 : -1;
  StateVector projected = 0.5 * (state + static_cast<double>(outcome) * flipped);
  state = projected / projected.norm();
  return outcome;
}

namespace {

StateVector basis_state(Eigen::Index dim, Eigen::Index k) {
  StateVector v = StateVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

StateVector apply_all(StateVector v, int num_qubits, const Matrix2& op) {
  for (int q = 0; q < num_qubits; ++q) v = apply_single_qubit(v, num_qubits, q, op);
  return v;
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace

CodeSpec bitflip_logical_states() {
  const SpinJ j(3);
  return {CodeKind::BitFlip3, PhysicalRegister{3, dicke_embed(j, basis_state(4, 0))},
          PhysicalRegister{3, dicke_embed(j, basis_state(4, 3))}};
}

CodeSpec shor_logical_states() {
  const SpinJ j(3);
  const double h = 1.0 / std::sqrt(2.0);
  StateVector plus = StateVector::Zero(4), minus = StateVector::Zero(4);
  plus << h, 0.0, 0.0, h;
  minus << h, 0.0, 0.0, -h;
  const StateVector bp = dicke_embed(j, plus);
  const StateVector bm = dicke_embed(j, minus);
  StateVector zero = kron(kron(bp, bp), bp);
  StateVector one = kron(kron(bm, bm), bm);
  return {CodeKind::Shor9, PhysicalRegister{9, std::move(zero)}, PhysicalRegister{9, std::move(one)}};
}

PhysicalRegister encode_rotated(const CodeSpec& code, const Direction& d, const Vector2& logical) {
  if (std::abs(logical.norm() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "logical amplitudes must be normalized");
  const int nq = code.logical_zero.num_qubits;
  StateVector v = logical(0) * code.logical_zero.amplitudes + logical(1) * code.logical_one.amplitudes;
  return {nq, apply_all(std::move(v), nq, rotation_full(SpinJ(1), d))};
}

namespace {

// Syndrome pair (s01, s12) of the repetition code -> flipped constituent.
std::optional<int> repetition_lookup(int s01, int s12) {
  if (s01 == -1 && s12 == 1) return 0;
  if (s01 == -1 && s12 == -1) return 1;
  if (s01 == 1 && s12 == -1) return 2;
  return std::nullopt;
}

}  // namespace

BitFlipOutcome bitflip_encode_and_correct(const Direction& d, const Vector2& logical,
                                          std::optional<int> error_qubit, ErrorFrame frame,
                                          std::uint64_t seed) {
  const PhysicalRegister target = encode_rotated(bitflip_logical_states(), d, logical);
  StateVector state = target.amplitudes;
  const Matrix2 flip = rotated_pauli(d, pauli_x());
  if (error_qubit) {
    if (*error_qubit < 0 || *error_qubit > 2)
      throw Error(ErrorKind::IndexOutOfRange, "bit-flip code has constituents 0..2");
    state = apply_single_qubit(state, 3, *error_qubit, frame == ErrorFrame::Rotated ? flip : pauli_x());
  }
  const std::array<std::pair<int, int>, 2> pairs{{{0, 1}, {1, 2}}};
  const auto syndromes = rotated_syndrome_products(d, pairs, 3);
  RngStream rng(seed, 0);
  BitFlipOutcome out;
  out.syndrome[0] = measure_involution(state, syndromes[0], rng);
  out.syndrome[1] = measure_involution(state, syndromes[1], rng);
  out.corrected_qubit = repetition_lookup(out.syndrome[0], out.syndrome[1]);
  if (out.corrected_qubit) state = apply_single_qubit(state, 3, *out.corrected_qubit, flip);
  out.fidelity = state_fidelity(target.amplitudes, state);
  out.corrected = PhysicalRegister{3, std::move(state)};
  return out;
}

double ShorOverlap::condition_violation() const {
  const Matrix2& m = direct;
  return std::max(std::abs(m(1, 0) + std::conj(m(0, 1))), std::abs(m(1, 1) - std::conj(m(0, 0))));
}

ShorOverlap shor_overlap_elements(const Direction& a, const Direction& b) {
  const SpinJ j(3);
  const auto rs = rs_coefficients(j, a, b);
  const Complex r = rs.r, s = rs.s, rc = std::conj(rs.r), sc = std::conj(rs.s);
  ShorOverlap out;
  // Block basis |+-> = (|3/2> +- |-3/2>)/sqrt(2); index 0 is |0_L>.
  out.closed_form << ipow(0.5 * (r + s - sc + rc), 3), ipow(0.5 * (r - rc - s - sc), 3),
      ipow(0.5 * (r + s + sc - rc), 3), ipow(0.5 * (r - s + sc + rc), 3);

  const ComplexMatrix u = rotation_full(j, a).adjoint() * rotation_full(j, b);
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix blocks = ComplexMatrix::Zero(4, 2);
  blocks(0, 0) = h;
  blocks(3, 0) = h;
  blocks(0, 1) = h;
  blocks(3, 1) = -h;
  const Matrix2 block_elements = blocks.adjoint() * u * blocks;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) out.direct(x, y) = ipow(block_elements(x, y), 3);
  out.discrepancy = (out.closed_form - out.direct).cwiseAbs().maxCoeff();
  return out;
}

Matrix2 shor_overlap_full_register(const Direction& a, const Direction& b) {
  const CodeSpec code = shor_logical_states();
  const SpinJ half(1);
  const Matrix2 u = rotation_full(half, a).adjoint() * rotation_full(half, b);
  const StateVector* logical[2] = {&code.logical_zero.amplitudes, &code.logical_one.amplitudes};
  Matrix2 m;
  for (int y = 0; y < 2; ++y) {
    const StateVector moved = apply_all(*logical[y], 9, u);
    for (int x = 0; x < 2; ++x) m(x, y) = logical[x]->dot(moved);
  }
  return m;
}

ShorUnitarity shor_unitarity_check(const Direction& a, const Direction& b) {
  const Matrix2 m = shor_overlap_elements(a, b).direct;
  const auto polar = polar_unitary(m);
  const double scale = std::abs(m.determinant());
  ShorUnitarity out;
  out.kappa = 1.0 / std::sqrt(scale);
  out.unitary = polar.unitary;
  out.proportionality_defect = (m.adjoint() * m - scale * Matrix2::Identity()).norm();
  return out;
}

ShorCorrectionOutcome shor_encode_and_correct(const Direction& d, const Vector2& logical,
                                              std::optional<QubitOperator> error, std::uint64_t seed) {
  const PhysicalRegister target = encode_rotated(shor_logical_states(), d, logical);
  StateVector state = target.amplitudes;
  if (error) state = apply_single_qubit(state, 9, error->qubit, error->op);

  const Matrix2 zr = axis_pauli(d);
  const Matrix2 xr = rotated_pauli(d, pauli_x());
  RngStream rng(seed, 0);
  ShorCorrectionOutcome out;
  for (int block = 0; block < 3; ++block) {
    const int q = 3 * block;
    out.bit_syndrome[2 * block] = measure_involution(state, {9, {{q, zr}, {q + 1, zr}}}, rng);
    out.bit_syndrome[2 * block + 1] = measure_involution(state, {9, {{q + 1, zr}, {q + 2, zr}}}, rng);
  }
  OperatorProduct x_first{9, {}}, x_second{9, {}};
  for (int q = 0; q < 6; ++q) x_first.factors.push_back({q, xr});
  for (int q = 3; q < 9; ++q) x_second.factors.push_back({q, xr});
  out.phase_syndrome[0] = measure_involution(state, x_first, rng);
  out.phase_syndrome[1] = measure_involution(state, x_second, rng);

  for (int block = 0; block < 3; ++block) {
    if (auto k = repetition_lookup(out.bit_syndrome[2 * block], out.bit_syndrome[2 * block + 1]))
      state = apply_single_qubit(state, 9, 3 * block + *k, xr);
  }
  if (auto blk = repetition_lookup(out.phase_syndrome[0], out.phase_syndrome[1]))
    state = apply_single_qubit(state, 9, 3 * *blk, zr);
  out.fidelity = state_fidelity(target.amplitudes, state);
  return out;
}

namespace {

struct VertexData {
  ComplexMatrix frame;      // 8 x 2
  ComplexMatrix projector;  // 8 x 8
  Matrix2 flip;
  std::vector<OperatorProduct> syndromes;
};

struct ProtectedShot {
  std::size_t attempts = 0;
  bool success = false;
  double fidelity = 0.0;
  std::size_t errors = 0;
  std::size_t corrections = 0;
};

}  // namespace

ProtectedRunStats run_protected_sequence(const MeasurementPath& path, const Vector2& input,
                                         const ProtectedRunConfig& cfg) {
  const SimConfig& sim = cfg.sim;
  if (sim.shots < 1) throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
  if (cfg.error_probability < 0.0 || cfg.error_probability > 1.0)
    throw Error(ErrorKind::InvalidArgument, "error probability must lie in [0, 1]");
  if (std::abs(input.norm() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "input state must be normalized");

  const SpinJ j(3);
  const std::array<std::pair<int, int>, 2> pairs{{{0, 1}, {1, 2}}};
  std::vector<VertexData> vertices;
  for (const auto& v : path.vertices()) {
    VertexData data;
    data.frame.resize(8, 2);
    data.frame.col(0) = dicke_embed(j, scs_state(j, v, Sign::Plus));
    data.frame.col(1) = dicke_embed(j, scs_state(j, v, Sign::Minus));
    data.projector = data.frame * data.frame.adjoint();
    data.flip = rotated_pauli(v, pauli_x());
    data.syndromes = rotated_syndrome_products(v, pairs, 3);
    vertices.push_back(std::move(data));
  }
  const StateVector prepared = vertices.front().frame * input;
  const Vector2 expected = holonomy(j, path).u_d * input;
  const std::size_t max_attempts = sim.strategy == Strategy::Restart ? sim.max_restarts + 1 : 1;

  auto run_shot = [&](std::size_t shot) {
    RngStream rng(sim.seed, shot);
    ProtectedShot r;
    while (r.attempts < max_attempts && !r.success) {
      ++r.attempts;
      StateVector state = prepared;
      bool ok = true;
      for (const auto& v : vertices) {
        MeasureOutcome m = born_measure(state, v.projector, rng);
        if (!m.passed) {
          ok = false;
          break;
        }
        state = std::move(m.collapsed);
        if (rng.uniform() < cfg.error_probability) {
          state = apply_single_qubit(state, 3, static_cast<int>(rng.next() % 3), v.flip);
          ++r.errors;
        }
        if (cfg.correct) {
          const int s01 = measure_involution(state, v.syndromes[0], rng);
          const int s12 = measure_involution(state, v.syndromes[1], rng);
          if (auto k = repetition_lookup(s01, s12)) {
            state = apply_single_qubit(state, 3, *k, v.flip);
            ++r.corrections;
          }
        }
      }
      if (ok) {
        r.success = true;
        const Vector2 coords = vertices.back().frame.adjoint() * state;
        const double norm2 = coords.squaredNorm();
        r.fidelity = norm2 > 1e-300 ? std::norm(coords.dot(expected)) / (norm2 * expected.squaredNorm()) : 0.0;
      }
    }
    return r;
  };

  std::vector<ProtectedShot> results(sim.shots);
  const unsigned workers = std::min<std::size_t>(resolve_threads(sim.threads), sim.shots);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < sim.shots; s += workers) results[s] = run_shot(s);
      });
  }

  ProtectedRunStats out;
  RunStats& stats = out.run;
  stats.shots = sim.shots;
  double fidelity_sum = 0.0;
  double min_fid = 1.0;
  for (const auto& r : results) {
    stats.total_attempts += r.attempts;
    out.errors_injected += r.errors;
    out.corrections_applied += r.corrections;
    if (r.success) {
      ++stats.successes;
      fidelity_sum += r.fidelity;
      min_fid = std::min(min_fid, r.fidelity);
    } else if (sim.strategy == Strategy::Restart) {
      ++stats.exhausted;
    }
  }
  stats.empirical_success_rate = static_cast<double>(stats.successes) / static_cast<double>(sim.shots);
  stats.mean_restarts = static_cast<double>(stats.total_attempts - sim.shots) / static_cast<double>(sim.shots);
  if (stats.successes > 0) {
    stats.final_fidelity = fidelity_sum / static_cast<double>(stats.successes);
    stats.min_fidelity = min_fid;
  }
  return out;
}

}  // namespace dholo
