#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dholo/holonomy.hpp"
#include "dholo/linalg.hpp"

namespace dholo {

enum class Axis { X, Y, Z };

const char* to_string(Axis axis);

/// exp(-i angle sigma_axis / 2).
Matrix2 axis_rotation(Axis axis, double angle);

enum class GateKind { RotZ, RotX, RotY, T, S, H, ArbitrarySU2 };

struct GateSpec {
  GateKind kind = GateKind::RotZ;
  double angle = 0.0;                    // rotation kinds
  std::array<double, 3> euler{0, 0, 0};  // ArbitrarySU2: D_z(alpha) D_y(beta) D_z(gamma)

  Matrix2 target() const;
};

struct RootChoice {
  Axis axis = Axis::Z;
  double target_phase = 0.0;
  double varphi = 0.0;
  std::size_t root_index = 0;
  std::vector<double> all_roots;
};

/// Segments run in order: segment k+1 acts after segment k.
struct SynthesizedSequence {
  std::vector<MeasurementPath> segments;
  Matrix2 predicted_unitary = Matrix2::Identity();
  std::vector<RootChoice> branch_choices;

  /// Holonomies of the segments multiplied in execution order.
  Matrix2 composed_holonomy(SpinJ j) const;

  /// Vertex list with the shared (0,0) endpoints of consecutive segments merged.
  std::vector<Direction> flattened_vertices() const;
};

/// Relative phase arg(U[0][0]/U[1][1]) of the z-rotation cycle holonomy for
/// j = (2n+1)/2 at subspace angle varphi, in (-pi, pi]. The cycle realizes
/// D_z(-relative_phase), and likewise for the x and y cycles.
double relative_phase(int n, double varphi);

/// All varphi in [0, 2pi) with relative_phase(n, varphi) == target_phase,
/// sorted ascending. Empty when there is no solution.
std::vector<double> solve_subspace_angle(int n, double target_phase);

/// Four-vertex cycle whose holonomy is a rotation about `axis`:
///   z: (0,0) -> (pi/2, pi) -> (pi/2, varphi) -> (0,0)
///   x: (0,0) -> (pi/2, pi) -> (varphi, pi/2) -> (0,0)
///   y: (0,0) -> (varphi, 0 | pi for even | odd n) -> (pi/2, pi/2) -> (0,0)
MeasurementPath rotation_path(int n, Axis axis, double varphi);

/// Rotation by `angle` about `axis`, using the smallest root.
SynthesizedSequence synth_rotation(int n, Axis axis, double angle);

enum class CliffordT { T, S, H };

struct CliffordTOptions {
  /// Use (pi/2, 0) instead of (pi/2, pi) as the fifth H vertex.
  bool h_alt_fifth_vertex = false;
  /// Solve T and S for relative phases +pi/4 and +pi/2, the printed angle
  /// table. Those cycles realize T^dagger and S^dagger.
  bool paper_table = false;
};

SynthesizedSequence synth_clifford_t(int n, CliffordT gate, const CliffordTOptions& options = {});

struct ZyzAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// U = e^{i delta} D_z(alpha) D_y(beta) D_z(gamma), beta in [0, pi].
ZyzAngles zyz_decompose(const Matrix2& u);

/// Three segments (z(gamma), y(beta), z(alpha)) in execution order.
SynthesizedSequence compile_su2(int n, const Matrix2& u);

/// |tr(U^dagger V)| / 2.
double fidelity_up_to_phase(const Matrix2& u, const Matrix2& v);

}  // namespace dholo
