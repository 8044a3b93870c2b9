#pragma once

#include "dholo/linalg.hpp"
#include "dholo/spin.hpp"

namespace dholo {

/// Closed-form overlaps R = <+j;a|+j;b> and S = <+j;a|-j;b>.
struct RSCoefficients {
  Complex r;
  Complex s;
  SpinJ j;
  Direction a;
  Direction b;

  /// |R|^2 + |S|^2
  double weight() const { return std::norm(r) + std::norm(s); }
};

RSCoefficients rs_coefficients(SpinJ j, const Direction& a, const Direction& b);

/// Left polar decomposition M = P U with P = sqrt(M M^dagger).
struct PolarDecomposition {
  ComplexMatrix positive;
  ComplexMatrix unitary;
};

/// Throws SingularInput when the smallest singular value is <= 1e-12.
PolarDecomposition polar_unitary(const ComplexMatrix& m);

/// Overlap matrix (F_a|F_b) between two SCS frames.
///
/// For half-odd-integer j the matrix is kappa^{-1} U with U unitary. Integer
/// spins are accepted for exploration; then `scalar_times_unitary` is false,
/// `u` is only the polar factor of `m` (or zero if `m` is singular).
struct OverlapMatrix {
  Matrix2 m;
  double kappa = 1.0;
  Matrix2 u;
  bool scalar_times_unitary = true;
};

OverlapMatrix overlap_matrix(SpinJ j, const Direction& a, const Direction& b);

/// Assembles [[R, xi S], [sign xi* S*, R*]] and its polar data. `conj_sign`
/// is the factor multiplying xi* S* in the lower-left entry.
OverlapMatrix assemble_overlap(const RSCoefficients& rs, Complex xi, double conj_sign);

/// Direct inner products <+-j;a|+-j;b> of SCS vectors. Independent of the
/// closed forms above.
Matrix2 overlap_bruteforce(SpinJ j, const Direction& a, const Direction& b);

}  // namespace dholo
