#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dholo/holonomy.hpp"
#include "dholo/linalg.hpp"
#include "dholo/measurement.hpp"
#include "dholo/spin.hpp"

namespace dholo {

/// n-qubit register; qubit 0 is the most significant bit of the index.
struct PhysicalRegister {
  int num_qubits = 0;
  StateVector amplitudes;

  static PhysicalRegister from_amplitudes(int num_qubits, StateVector amplitudes);
};

/// Single-qubit operator acting on one register position.
struct QubitOperator {
  int qubit = 0;
  Matrix2 op;
};

/// Tensor product of single-qubit factors (identity elsewhere).
struct OperatorProduct {
  int num_qubits = 0;
  std::vector<QubitOperator> factors;

  StateVector apply(const StateVector& v) const;
  ComplexMatrix dense() const;
};

StateVector apply_single_qubit(const StateVector& v, int num_qubits, int qubit, const Matrix2& op);

/// n . sigma for the direction's unit vector.
Matrix2 axis_pauli(const Direction& d);

/// R sigma R^dagger with R = rotation_full(1/2, d), the lab-frame Pauli
/// `pauli` carried into the frame at d.
Matrix2 rotated_pauli(const Direction& d, const Matrix2& pauli);

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

/// (n.sigma)_i (n.sigma)_k for each pair. Throws IndexOutOfRange.
std::vector<OperatorProduct> rotated_syndrome_products(const Direction& d,
                                                       std::span<const std::pair<int, int>> pairs,
                                                       int num_qubits);
std::vector<ComplexMatrix> rotated_syndrome_ops(const Direction& d,
                                                std::span<const std::pair<int, int>> pairs,
                                                int num_qubits);

/// Measures an involutive observable (S^2 = 1) with the Born rule, collapsing
/// `state` onto the observed eigenspace. Returns +1 or -1.
int measure_involution(StateVector& state, const OperatorProduct& observable, RngStream& rng);

enum class CodeKind { BitFlip3, Shor9 };

struct CodeSpec {
  CodeKind kind = CodeKind::BitFlip3;
  PhysicalRegister logical_zero;
  PhysicalRegister logical_one;
};

/// |0_L> = |3/2> embedded as |up up up>, |1_L> = |down down down>.
CodeSpec bitflip_logical_states();

/// |0_L>, |1_L> = (|3/2> +- |-3/2>)^{(x)3} / (2 sqrt 2), each block embedded
/// into three constituents.
CodeSpec shor_logical_states();

/// a|0_L> + b|1_L> with every constituent rotated by rotation_full(1/2, d).
PhysicalRegister encode_rotated(const CodeSpec& code, const Direction& d, const Vector2& logical);

enum class ErrorFrame { Rotated, Lab };

struct BitFlipOutcome {
  PhysicalRegister corrected;
  std::array<int, 2> syndrome{1, 1};
  std::optional<int> corrected_qubit;
  double fidelity = 1.0;
};

/// Encodes into the frame at d, optionally flips one constituent, runs the
/// rotated (Z0Z1, Z1Z2) syndrome round, corrects, and reports the fidelity
/// against the error-free encoded state. Rotated flips give deterministic
/// syndromes; lab-frame flips are sampled with `seed`.
BitFlipOutcome bitflip_encode_and_correct(const Direction& d, const Vector2& logical,
                                          std::optional<int> error_qubit,
                                          ErrorFrame frame = ErrorFrame::Rotated,
                                          std::uint64_t seed = 0);

/// Logical matrix elements <x_L| U^{(x)3} |y_L> with
/// U = exp(i th_a Jy) exp(-i (ph_b - ph_a) Jz) exp(-i th_b Jy) on each block.
struct ShorOverlap {
  Matrix2 closed_form;  // per-block ((R - R* - S - S*)/2)^3 style expressions
  Matrix2 direct;       // 4-dim block contraction, cubed
  double discrepancy = 0.0;

  /// max(|M10 + conj(M01)|, |M11 - conj(M00)|)
  double condition_violation() const;
};

ShorOverlap shor_overlap_elements(const Direction& a, const Direction& b);

/// Same elements by contracting the full 9-qubit registers.
Matrix2 shor_overlap_full_register(const Direction& a, const Direction& b);

struct ShorUnitarity {
  double kappa = 1.0;
  Matrix2 unitary = Matrix2::Identity();
  /// || M^dagger M - kappa^{-2} I ||
  double proportionality_defect = 0.0;
};

/// Throws SingularInput.
ShorUnitarity shor_unitarity_check(const Direction& a, const Direction& b);

struct ShorCorrectionOutcome {
  std::array<int, 6> bit_syndrome{1, 1, 1, 1, 1, 1};
  std::array<int, 2> phase_syndrome{1, 1};
  double fidelity = 1.0;
};

/// Shor-code round in the frame at d: encode, apply `error` (any single-qubit
/// operator) to one constituent, measure the 8 rotated stabilizers, correct.
ShorCorrectionOutcome shor_encode_and_correct(const Direction& d, const Vector2& logical,
                                              std::optional<QubitOperator> error, std::uint64_t seed);

struct ProtectedRunConfig {
  SimConfig sim;
  /// Probability of one rotated constituent flip after each filtering.
  double error_probability = 0.0;
  bool correct = true;
};

struct ProtectedRunStats {
  RunStats run;
  std::size_t errors_injected = 0;
  std::size_t corrections_applied = 0;
};

/// j = 3/2 filtering cycle on the three spin-1/2 constituents with a rotated
/// bit-flip syndrome round after every projection:
/// projection -> (noise) -> syndrome round -> correction, per vertex.
ProtectedRunStats run_protected_sequence(const MeasurementPath& path, const Vector2& input,
                                         const ProtectedRunConfig& cfg);

}  // namespace dholo
