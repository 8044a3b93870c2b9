#include "dholo/holonomy.hpp"

#include <cmath>
#include <future>
#include <string>

#include "dholo/errors.hpp"
#include "dholo/overlap.hpp"

namespace dholo {

MeasurementPath::MeasurementPath(std::vector<Direction> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "a measurement path needs at least 2 vertices");
  if (!same_label(vertices_.front(), vertices_.back()))
    throw Error(ErrorKind::InvalidArgument, "path is not closed: first and last vertex differ");
}

MeasurementPath MeasurementPath::reversed() const {
  return MeasurementPath(std::vector<Direction>(vertices_.rbegin(), vertices_.rend()));
}

Vector2 default_input() {
  const double h = 1.0 / std::sqrt(2.0);
  return Vector2(h, h);
}

double HolonomyResult::survival(const Vector2& input) const { return (d * input).squaredNorm(); }

HolonomyResult holonomy(SpinJ j, const MeasurementPath& path) {
  if (!j.is_gate_valid())
    throw Error(ErrorKind::InvalidArgument, "holonomy requires half-odd-integer j");
  const auto& v = path.vertices();
  // Accumulate the product of the per-leg unitary parts and the kappa factors
  // separately; D itself can be very small for long paths.
  Matrix2 unit_product = Matrix2::Identity();
  double kappa_product = 1.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const auto rs = rs_coefficients(j, v[k + 1], v[k]);
    if (rs.weight() <= 1e-24)
      throw Error(ErrorKind::DegenerateCycle, "leg " + std::to_string(k) + " joins orthogonal frames");
    const OverlapMatrix leg = overlap_matrix(j, v[k + 1], v[k]);
    unit_product = (leg.kappa * leg.m) * unit_product;
    kappa_product *= leg.kappa;
  }
  HolonomyResult out;
  out.u_d = polar_unitary(unit_product).unitary;
  out.d = unit_product / kappa_product;
  out.kappa_product = kappa_product;
  out.default_survival = out.survival(default_input());
  return out;
}

double survival_probability(SpinJ j, const MeasurementPath& path, const Vector2& input) {
  if (std::abs(input.norm() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "input state must be normalized");
  return holonomy(j, path).survival(input);
}

double transition_amplitude_closed_form(int n, double varphi) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
  const int power = 2 + 4 * n;
  return std::pow(4.0, -2.0 * n) *
         (std::pow(std::cos(0.5 * varphi), power) + std::pow(std::sin(0.5 * varphi), power));
}

double diagonal_relative_phase(const Matrix2& u) {
  return wrap_angle(std::arg(u(0, 0) * std::conj(u(1, 1))));
}

MeasurementPath densify_path(const MeasurementPath& path, int steps_per_leg) {
  if (steps_per_leg < 1) throw Error(ErrorKind::InvalidArgument, "steps_per_leg must be >= 1");
  const auto& v = path.vertices();
  std::vector<Direction> out;
  out.reserve(path.num_legs() * static_cast<std::size_t>(steps_per_leg) + 1);
  out.push_back(v.front());
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const Eigen::Vector3d a = v[k].unit_vector();
    const Eigen::Vector3d b = v[k + 1].unit_vector();
    const double sin_omega = a.cross(b).norm();
    const double omega = std::atan2(sin_omega, a.dot(b));
    if (steps_per_leg > 1 && sin_omega <= 1e-12 && a.dot(b) < 0.0)
      throw Error(ErrorKind::AntipodalLeg, "leg " + std::to_string(k) + " joins antipodal points");
    for (int s = 1; s < steps_per_leg; ++s) {
      if (sin_omega <= 1e-12) {
        out.push_back(v[k]);
        continue;
      }
      const double t = static_cast<double>(s) / steps_per_leg;
      const Eigen::Vector3d p =
          (std::sin((1.0 - t) * omega) * a + std::sin(t * omega) * b) / std::sin(omega);
      out.push_back(Direction::from_unit_vector(p));
    }
    out.push_back(v[k + 1]);
  }
  return MeasurementPath(std::move(out));
}

std::vector<ZenoRow> zeno_sweep(SpinJ j, const MeasurementPath& base, const Vector2& input,
                                const std::vector<int>& step_counts) {
  if (!j.is_gate_valid())
    throw Error(ErrorKind::InvalidArgument, "zeno sweep requires half-odd-integer j");
  std::vector<std::future<ZenoRow>> jobs;
  jobs.reserve(step_counts.size());
  for (int steps : step_counts) {
    jobs.push_back(std::async(std::launch::async, [&, steps] {
      const HolonomyResult h = holonomy(j, densify_path(base, steps));
      ZenoRow row;
      row.steps_per_leg = steps;
      row.relative_phase = diagonal_relative_phase(h.u_d);
      row.survival_probability = h.survival(input);
      row.max_offdiag = std::max(std::abs(h.u_d(0, 1)), std::abs(h.u_d(1, 0)));
      return row;
    }));
  }
  std::vector<ZenoRow> rows;
  rows.reserve(jobs.size());
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

double zeno_predicted_phase(SpinJ j, double varphi) { return wrap_angle(-j.value() * 2.0 * varphi); }

}  // namespace dholo
