#pragma once

#include <Eigen/Dense>

#include "dholo/linalg.hpp"

namespace dholo {

/// Spin quantum number j, stored exactly as the integer 2j.
class SpinJ {
 public:
  explicit SpinJ(int twice_j);

  /// j = (2n+1)/2.
  static SpinJ half_odd(int n) { return SpinJ(2 * n + 1); }

  int twice_j() const noexcept { return twice_j_; }
  double value() const noexcept { return 0.5 * twice_j_; }
  int dim() const noexcept { return twice_j_ + 1; }

  /// True for half-odd-integer j, the only spins whose SCS frames are fully
  /// overlapping and therefore usable for gates.
  bool is_gate_valid() const noexcept { return twice_j_ % 2 == 1; }

  /// n in j = (2n+1)/2. Only meaningful when is_gate_valid().
  int n() const noexcept { return (twice_j_ - 1) / 2; }

  friend bool operator==(SpinJ, SpinJ) = default;

 private:
  int twice_j_;
};

/// A point (theta, phi) on the unit sphere labelling a measurement subspace.
/// theta is kept in [0, pi] and phi is normalized into [0, 2pi).
class Direction {
 public:
  Direction() = default;
  Direction(double theta, double phi);

  /// Accepts any real polar angle and folds it back into [0, pi], moving phi
  /// by pi when the fold crosses a pole. The unit vector is unchanged.
  static Direction folded(double theta, double phi);
  static Direction from_unit_vector(const Eigen::Vector3d& n);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  Eigen::Vector3d unit_vector() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Same (theta, phi) label, with phi compared modulo 2pi.
bool same_label(const Direction& a, const Direction& b, double tol = 1e-12);

struct AngularMomentum {
  ComplexMatrix jx;
  ComplexMatrix jy;
  ComplexMatrix jz;
};

/// Spin matrices in the |j, m> basis ordered m = j, j-1, ..., -j.
AngularMomentum angular_momentum_ops(SpinJ j);

ComplexMatrix rotation_z(SpinJ j, double angle);
ComplexMatrix rotation_y(SpinJ j, double angle);

/// exp(-i phi Jz) exp(-i theta Jy).
ComplexMatrix rotation_full(SpinJ j, const Direction& d);

enum class Sign { Plus, Minus };

/// Spin coherent state |+-j; n> = rotation_full(j, d) |j, +-j>.
StateVector scs_state(SpinJ j, const Direction& d, Sign sign);

/// Two-column matrix whose columns are |+j; n> and |-j; n>.
ComplexMatrix scs_frame(SpinJ j, const Direction& d);

/// Maps a (2j+1)-dim spin state into the symmetric subspace of 2j spin-1/2
/// constituents. Constituent 0 is the most significant bit and |up> is bit 0.
StateVector dicke_embed(SpinJ j, const StateVector& v);

}  // namespace dholo
