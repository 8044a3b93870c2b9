#pragma once

#include <cstddef>
#include <vector>

#include "dholo/linalg.hpp"
#include "dholo/spin.hpp"

namespace dholo {

/// Closed cycle of q+1 projective filterings. The first and last vertices must
/// carry the same label; q of the vertices are distinct.
class MeasurementPath {
 public:
  explicit MeasurementPath(std::vector<Direction> vertices);

  const std::vector<Direction>& vertices() const noexcept { return vertices_; }
  std::size_t num_legs() const noexcept { return vertices_.size() - 1; }
  MeasurementPath reversed() const;

 private:
  std::vector<Direction> vertices_;
};

/// Input used when a single survival number is reported: (|j> + |-j>)/sqrt(2).
Vector2 default_input();

struct HolonomyResult {
  Matrix2 d;
  Matrix2 u_d;
  double kappa_product = 1.0;
  double default_survival = 1.0;

  /// Squared norm of D * input.
  double survival(const Vector2& input) const;
};

/// D = (F_1|F_q)(F_q|F_{q-1}) ... (F_2|F_1) and its unitary polar part.
/// Requires half-odd-integer j; throws DegenerateCycle when a leg has
/// |R|^2 + |S|^2 <= 1e-24.
HolonomyResult holonomy(SpinJ j, const MeasurementPath& path);

/// Probability that every filtering along the path succeeds.
double survival_probability(SpinJ j, const MeasurementPath& path, const Vector2& input);

/// 4^{-2n} (cos^{2+4n}(v/2) + sin^{2+4n}(v/2)) for the z-rotation cycle.
double transition_amplitude_closed_form(int n, double varphi);

/// Relative phase arg(U[0][0] / U[1][1]) of the diagonal, in (-pi, pi].
double diagonal_relative_phase(const Matrix2& u);

/// Splits every leg into `steps_per_leg` equal-angle arcs of the great circle
/// through its endpoints. Original vertices keep their labels.
MeasurementPath densify_path(const MeasurementPath& path, int steps_per_leg);

struct ZenoRow {
  int steps_per_leg = 1;
  double relative_phase = 0.0;
  double survival_probability = 1.0;
  double max_offdiag = 0.0;
};

std::vector<ZenoRow> zeno_sweep(SpinJ j, const MeasurementPath& base, const Vector2& input,
                                const std::vector<int>& step_counts);

/// Dense-measurement limit of the relative phase, wrap(-2 j varphi).
double zeno_predicted_phase(SpinJ j, double varphi);

}  // namespace dholo
