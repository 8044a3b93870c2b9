#pragma once

#include <Eigen/Dense>

#include "dholo/holonomy.hpp"
#include "dholo/overlap.hpp"

namespace dholo {

/// Auxiliary states |zeta_+->, in the {|j>, |-j>} basis of the second qubit's
/// first frame. The second-qubit frame vectors are identified with them.
class AuxPair {
 public:
  AuxPair(const Vector2& zeta_plus, const Vector2& zeta_minus);

  /// zeta_+- = |+-j>, so xi = 0.
  static AuxPair stretched();
  /// zeta_+ = |j>, zeta_- = xi |j> + sqrt(1 - |xi|^2) |-j>.
  static AuxPair with_overlap(Complex xi);

  const Vector2& zeta_plus() const noexcept { return zeta_plus_; }
  const Vector2& zeta_minus() const noexcept { return zeta_minus_; }
  /// <zeta_+|zeta_->
  Complex xi() const { return zeta_plus_.dot(zeta_minus_); }

 private:
  Vector2 zeta_plus_;
  Vector2 zeta_minus_;
};

/// Logical product basis |x>|y>, index 2x + y, with |0> = |j> and |1> = |-j>.
struct TwoQubitState {
  Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Zero();
  /// Squared norm before renormalization (the postselection probability).
  double weight = 0.0;
};

/// [[R, xi S], [-xi* S*, R*]] with kappa^{-1} = sqrt(|R|^2 + |xi S|^2).
/// Throws DegenerateLeg when that weight is <= 1e-24.
OverlapMatrix two_qubit_overlap(SpinJ j, const Direction& a, const Direction& b, Complex xi);
OverlapMatrix two_qubit_overlap(SpinJ j, const Direction& a, const Direction& b, const AuxPair& aux);

/// Product of two-qubit overlap matrices along the path and its polar data.
HolonomyResult two_qubit_holonomy(SpinJ j, const MeasurementPath& path, Complex xi);

/// Sum of arg(R) over the legs in traversal order. Throws ZeroR when a leg
/// has |R| <= 1e-15.
double accumulated_phase(SpinJ j, const MeasurementPath& path);

/// Runs the filtering cycle on psi (first qubit) and psi_tilde (second qubit).
/// Output is renormalized; `weight` keeps the success probability.
TwoQubitState two_qubit_gate_action(SpinJ j, const MeasurementPath& path, const Vector2& psi,
                                    const Vector2& psi_tilde, const AuxPair& aux);

/// 2 |wz - xy| of the renormalized amplitudes. Throws ZeroWeight.
double concurrence(const TwoQubitState& state);

}  // namespace dholo
