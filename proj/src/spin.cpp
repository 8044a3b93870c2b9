#include "dholo/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dholo/errors.hpp"

namespace dholo {

SpinJ::SpinJ(int twice_j) : twice_j_(twice_j) {
  if (twice_j < 1)
    throw Error(ErrorKind::InvalidArgument, "2j must be >= 1, got " + std::to_string(twice_j));
}

namespace {

double normalize_phi(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

}  // namespace

Direction::Direction(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw Error(ErrorKind::InvalidArgument, "direction angles must be finite");
  constexpr double kSlack = 1e-12;
  if (theta < -kSlack || theta > kPi + kSlack)
    throw Error(ErrorKind::InvalidArgument,
                "polar angle " + std::to_string(theta) + " outside [0, pi]");
  theta_ = std::clamp(theta, 0.0, kPi);
  phi_ = normalize_phi(phi);
}

Direction Direction::folded(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw Error(ErrorKind::InvalidArgument, "direction angles must be finite");
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t > kPi) return Direction(kTwoPi - t, phi + kPi);
  return Direction(t, phi);
}

Direction Direction::from_unit_vector(const Eigen::Vector3d& n) {
  const double norm = n.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "zero vector has no direction");
  const Eigen::Vector3d u = n / norm;
  const double theta = std::atan2(std::hypot(u.x(), u.y()), u.z());
  const double phi = std::atan2(u.y(), u.x());
  return Direction(theta, phi);
}

Eigen::Vector3d Direction::unit_vector() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

bool same_label(const Direction& a, const Direction& b, double tol) {
  if (std::abs(a.theta() - b.theta()) > tol) return false;
  return std::abs(wrap_angle(a.phi() - b.phi())) <= tol;
}

AngularMomentum angular_momentum_ops(SpinJ j) {
  const int dim = j.dim();
  const double jv = j.value();
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = jv - k;
    jz(k, k) = m;
    // J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>, and m+1 sits at index k-1.
    if (k > 0) jplus(k - 1, k) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jminus = jplus.adjoint();
  const Complex i{0.0, 1.0};
  ComplexMatrix jx = 0.5 * (jplus + jminus);
  ComplexMatrix jy = (jplus - jminus) / (2.0 * i);
  return {std::move(jx), std::move(jy), std::move(jz)};
}

ComplexMatrix rotation_z(SpinJ j, double angle) {
  const int dim = j.dim();
  ComplexMatrix r = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j.value() - k;
    r(k, k) = std::polar(1.0, -angle * m);
  }
  return r;
}

ComplexMatrix rotation_y(SpinJ j, double angle) {
  const ComplexMatrix jy = angular_momentum_ops(j).jy;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(jy);
  const ComplexMatrix& v = eig.eigenvectors();
  Eigen::VectorXcd phases(j.dim());
  for (int k = 0; k < j.dim(); ++k) phases(k) = std::polar(1.0, -angle * eig.eigenvalues()(k));
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix rotation_full(SpinJ j, const Direction& d) {
  return rotation_z(j, d.phi()) * rotation_y(j, d.theta());
}

StateVector scs_state(SpinJ j, const Direction& d, Sign sign) {
  const ComplexMatrix r = rotation_full(j, d);
  return r.col(sign == Sign::Plus ? 0 : j.twice_j());
}

ComplexMatrix scs_frame(SpinJ j, const Direction& d) {
  const ComplexMatrix r = rotation_full(j, d);
  ComplexMatrix f(j.dim(), 2);
  f.col(0) = r.col(0);
  f.col(1) = r.col(j.twice_j());
  return f;
}

StateVector dicke_embed(SpinJ j, const StateVector& v) {
  if (v.size() != j.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "expected dimension " + std::to_string(j.dim()) + ", got " + std::to_string(v.size()));
  const int constituents = j.twice_j();
  const std::size_t full = std::size_t{1} << constituents;
  // binom[k] = C(2j, k)
  std::vector<double> binom(constituents + 1, 1.0);
  for (int k = 1; k <= constituents; ++k) binom[k] = binom[k - 1] * (constituents - k + 1) / k;

  StateVector out = StateVector::Zero(static_cast<Eigen::Index>(full));
  for (std::size_t idx = 0; idx < full; ++idx) {
    const int downs = std::popcount(idx);
    out(static_cast<Eigen::Index>(idx)) = v(downs) / std::sqrt(binom[downs]);
  }
  return out;
}

}  // namespace dholo
