#include "dholo/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dholo/errors.hpp"

namespace dholo {

const char* to_string(Axis axis) {
  switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

Matrix2 axis_rotation(Axis axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Complex i{0.0, 1.0};
  Matrix2 r;
  switch (axis) {
    case Axis::X: r << c, -i * s, -i * s, c; break;
    case Axis::Y: r << c, -s, s, c; break;
    case Axis::Z: r << std::polar(1.0, -0.5 * angle), 0.0, 0.0, std::polar(1.0, 0.5 * angle); break;
  }
  return r;
}

Matrix2 GateSpec::target() const {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix2 m;
  switch (kind) {
    case GateKind::RotZ: return axis_rotation(Axis::Z, angle);
    case GateKind::RotX: return axis_rotation(Axis::X, angle);
    case GateKind::RotY: return axis_rotation(Axis::Y, angle);
    case GateKind::T: m << 1.0, 0.0, 0.0, std::polar(1.0, kPi / 4); return m;
    case GateKind::S: m << 1.0, 0.0, 0.0, Complex{0.0, 1.0}; return m;
    case GateKind::H: m << h, h, h, -h; return m;
    case GateKind::ArbitrarySU2:
      return axis_rotation(Axis::Z, euler[0]) * axis_rotation(Axis::Y, euler[1]) *
             axis_rotation(Axis::Z, euler[2]);
  }
  return Matrix2::Identity();
}

Matrix2 SynthesizedSequence::composed_holonomy(SpinJ j) const {
  Matrix2 u = Matrix2::Identity();
  for (const auto& seg : segments) u = holonomy(j, seg).u_d * u;
  return u;
}

std::vector<Direction> SynthesizedSequence::flattened_vertices() const {
  std::vector<Direction> out;
  for (const auto& seg : segments) {
    const auto& v = seg.vertices();
    auto first = v.begin();
    if (!out.empty() && same_label(out.back(), v.front())) ++first;
    out.insert(out.end(), first, v.end());
  }
  return out;
}

namespace {

Complex z_factor(int n, double varphi) {
  const int p = 2 * n + 1;
  const double c = std::cos(0.5 * varphi);
  const double s = std::sin(0.5 * varphi);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return std::polar(1.0, p * 0.5 * varphi) * Complex{sign * std::pow(c, p), -std::pow(s, p)};
}

// Wrapped residual of relative_phase(n, v) - target; continuous near roots.
double phase_residual(int n, double varphi, Complex target_rotor) {
  const Complex zc = std::conj(z_factor(n, varphi));
  return std::arg(zc * zc * target_rotor);
}

void require_n(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
}

}  // namespace

double relative_phase(int n, double varphi) {
  require_n(n);
  const Complex zc = std::conj(z_factor(n, varphi));
  return wrap_angle(std::arg(zc * zc));
}

std::vector<double> solve_subspace_angle(int n, double target_phase) {
  require_n(n);
  const double target = wrap_angle(target_phase);
  if (n == 0) {
    // j = 1/2: the cycle is always trivial, every varphi solves target 0.
    if (std::abs(target) <= 1e-12) return {0.0};
    return {};
  }
  const Complex rotor = std::polar(1.0, -target);
  const int cells = 4096 * n;  // grid step pi / (2048 n)
  const double step = kTwoPi / cells;

  std::vector<double> roots;
  double a = 0.0;
  double ga = phase_residual(n, a, rotor);
  for (int k = 1; k <= cells; ++k) {
    const double b = k * step;
    const double gb = phase_residual(n, b, rotor);
    if (ga == 0.0) {
      roots.push_back(a);
    } else if ((ga < 0.0) != (gb < 0.0) && gb != 0.0 && std::abs(ga) + std::abs(gb) < 0.5 * kPi) {
      // Genuine sign change, not the +-pi branch jump.
      double lo = a, hi = b, glo = ga;
      double mid = 0.5 * (lo + hi);
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = phase_residual(n, mid, rotor);
        if (gm == 0.0) break;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
        if (std::abs(gm) <= 1e-15) break;
      }
      if (std::abs(phase_residual(n, mid, rotor)) <= 1e-12) roots.push_back(mid);
    }
    a = b;
    ga = gb;
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (r >= kTwoPi) r -= kTwoPi;
    if (merged.empty() || r - merged.back() > 1e-9) merged.push_back(r);
  }
  // A root just below 2pi is the same point as a root at 0.
  if (merged.size() > 1 && merged.front() < 1e-9 && kTwoPi - merged.back() < 1e-9) merged.pop_back();
  std::sort(merged.begin(), merged.end());
  return merged;
}

MeasurementPath rotation_path(int n, Axis axis, double varphi) {
  require_n(n);
  const Direction pole(0.0, 0.0);
  switch (axis) {
    case Axis::Z:
      return MeasurementPath({pole, Direction(kPi / 2, kPi), Direction(kPi / 2, varphi), pole});
    case Axis::X:
      return MeasurementPath(
          {pole, Direction(kPi / 2, kPi), Direction::folded(varphi, kPi / 2), pole});
    case Axis::Y: {
      const double azimuth = (n % 2 == 0) ? 0.0 : kPi;
      return MeasurementPath(
          {pole, Direction::folded(varphi, azimuth), Direction(kPi / 2, kPi / 2), pole});
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown axis");
}

namespace {

struct Segment {
  MeasurementPath path;
  RootChoice choice;
  Matrix2 predicted;
};

Segment solve_segment(int n, Axis axis, double target_phase) {
  RootChoice choice;
  choice.axis = axis;
  choice.target_phase = wrap_angle(target_phase);
  choice.all_roots = solve_subspace_angle(n, choice.target_phase);
  if (choice.all_roots.empty())
    throw Error(ErrorKind::NoRoot, "no subspace angle reaches relative phase " +
                                       std::to_string(choice.target_phase) + " for n=" +
                                       std::to_string(n));
  choice.root_index = 0;
  choice.varphi = choice.all_roots.front();
  return {rotation_path(n, axis, choice.varphi), choice,
          axis_rotation(axis, -relative_phase(n, choice.varphi))};
}

void append(SynthesizedSequence& seq, Segment seg) {
  seq.segments.push_back(std::move(seg.path));
  seq.branch_choices.push_back(std::move(seg.choice));
  seq.predicted_unitary = seg.predicted * seq.predicted_unitary;
}

}  // namespace

SynthesizedSequence synth_rotation(int n, Axis axis, double angle) {
  if (!std::isfinite(angle)) throw Error(ErrorKind::InvalidArgument, "rotation angle must be finite");
  SynthesizedSequence seq;
  append(seq, solve_segment(n, axis, -angle));
  return seq;
}

SynthesizedSequence synth_clifford_t(int n, CliffordT gate, const CliffordTOptions& options) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Clifford+T synthesis needs n >= 1");
  const double sign = options.paper_table ? -1.0 : 1.0;
  switch (gate) {
    case CliffordT::T: return synth_rotation(n, Axis::Z, sign * kPi / 4);
    case CliffordT::S: return synth_rotation(n, Axis::Z, sign * kPi / 2);
    case CliffordT::H: {
      // H = D_z(pi) D_y(-pi/2) up to phase: y segment first, then z.
      SynthesizedSequence seq;
      append(seq, solve_segment(n, Axis::Y, kPi / 2));
      Segment z = solve_segment(n, Axis::Z, kPi);
      if (options.h_alt_fifth_vertex) {
        auto v = z.path.vertices();
        v[1] = Direction(kPi / 2, 0.0);
        z.path = MeasurementPath(std::move(v));
      }
      append(seq, std::move(z));
      return seq;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown Clifford+T gate");
}

ZyzAngles zyz_decompose(const Matrix2& u) {
  if (unitarity_defect(u) > 1e-10) throw Error(ErrorKind::NotUnitary, "zyz_decompose needs a unitary");
  const Matrix2 v = u / std::sqrt(u.determinant());
  // v = [[a, -b*], [b, a*]] = [[e^{-i(al+ga)/2} c, -e^{-i(al-ga)/2} s], [e^{i(al-ga)/2} s, e^{i(al+ga)/2} c]]
  const Complex a = v(0, 0);
  const Complex b = v(1, 0);
  ZyzAngles out;
  out.beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  constexpr double kTiny = 1e-12;
  if (std::abs(b) <= kTiny) {
    out.alpha = wrap_angle(-2.0 * std::arg(a));
  } else if (std::abs(a) <= kTiny) {
    out.alpha = wrap_angle(2.0 * std::arg(b));
  } else {
    const double sum = -2.0 * std::arg(a);
    const double diff = 2.0 * std::arg(b);
    out.alpha = wrap_angle(0.5 * (sum + diff));
    out.gamma = wrap_angle(0.5 * (sum - diff));
  }
  return out;
}

SynthesizedSequence compile_su2(int n, const Matrix2& u) {
  const ZyzAngles e = zyz_decompose(u);
  SynthesizedSequence seq;
  append(seq, solve_segment(n, Axis::Z, -e.gamma));
  append(seq, solve_segment(n, Axis::Y, -e.beta));
  append(seq, solve_segment(n, Axis::Z, -e.alpha));
  return seq;
}

double fidelity_up_to_phase(const Matrix2& u, const Matrix2& v) {
  return std::min(1.0, std::abs((u.adjoint() * v).trace()) / 2.0);
}

}  // namespace dholo
