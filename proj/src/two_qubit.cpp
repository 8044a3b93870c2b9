#include "dholo/two_qubit.hpp"

#include <cmath>
#include <string>

#include "dholo/errors.hpp"

namespace dholo {

namespace {

void require_unit(const Vector2& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be normalized");
}

void require_gate_spin(SpinJ j) {
  if (!j.is_gate_valid())
    throw Error(ErrorKind::InvalidArgument, "two-qubit construction requires half-odd-integer j");
}

}  // namespace

AuxPair::AuxPair(const Vector2& zeta_plus, const Vector2& zeta_minus)
    : zeta_plus_(zeta_plus), zeta_minus_(zeta_minus) {
  require_unit(zeta_plus_, "zeta_plus");
  require_unit(zeta_minus_, "zeta_minus");
}

AuxPair AuxPair::stretched() { return AuxPair(Vector2(1.0, 0.0), Vector2(0.0, 1.0)); }

AuxPair AuxPair::with_overlap(Complex xi) {
  if (std::abs(xi) > 1.0 + 1e-12) throw Error(ErrorKind::InvalidArgument, "|xi| must be <= 1");
  const double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(xi)));
  return AuxPair(Vector2(1.0, 0.0), Vector2(xi, rest));
}

OverlapMatrix two_qubit_overlap(SpinJ j, const Direction& a, const Direction& b, Complex xi) {
  require_gate_spin(j);
  const RSCoefficients rs = rs_coefficients(j, a, b);
  if (std::norm(rs.r) + std::norm(xi * rs.s) <= 1e-24)
    throw Error(ErrorKind::DegenerateLeg, "two-qubit overlap vanishes");
  return assemble_overlap(rs, xi, -1.0);
}

OverlapMatrix two_qubit_overlap(SpinJ j, const Direction& a, const Direction& b, const AuxPair& aux) {
  return two_qubit_overlap(j, a, b, aux.xi());
}

HolonomyResult two_qubit_holonomy(SpinJ j, const MeasurementPath& path, Complex xi) {
  const auto& v = path.vertices();
  Matrix2 unit_product = Matrix2::Identity();
  double kappa_product = 1.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const OverlapMatrix leg = two_qubit_overlap(j, v[k + 1], v[k], xi);
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

double accumulated_phase(SpinJ j, const MeasurementPath& path) {
  const auto& v = path.vertices();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const Complex r = rs_coefficients(j, v[k + 1], v[k]).r;
    if (std::abs(r) <= 1e-15)
      throw Error(ErrorKind::ZeroR, "leg " + std::to_string(k) + " has R = 0, phase undefined");
    total += std::arg(r);
  }
  return total;
}

TwoQubitState two_qubit_gate_action(SpinJ j, const MeasurementPath& path, const Vector2& psi,
                                    const Vector2& psi_tilde, const AuxPair& aux) {
  require_gate_spin(j);
  require_unit(psi, "psi");
  require_unit(psi_tilde, "psi_tilde");
  // The first filtering leaves a <zeta_+|psi~> |j>|zeta_+> + b <zeta_-|psi~> |-j>|zeta_->,
  // and the frame coordinates then evolve by D.
  const Complex xi = aux.xi();
  Matrix2 d = Matrix2::Identity();
  const auto& v = path.vertices();
  for (std::size_t k = 0; k + 1 < v.size(); ++k) d = two_qubit_overlap(j, v[k + 1], v[k], xi).m * d;
  const Vector2 coords(psi(0) * aux.zeta_plus().dot(psi_tilde), psi(1) * aux.zeta_minus().dot(psi_tilde));
  const Vector2 out = d * coords;

  TwoQubitState state;
  state.amplitudes.head<2>() = out(0) * aux.zeta_plus();
  state.amplitudes.tail<2>() = out(1) * aux.zeta_minus();
  state.weight = state.amplitudes.squaredNorm();
  if (state.weight > 0.0) state.amplitudes /= std::sqrt(state.weight);
  return state;
}

double concurrence(const TwoQubitState& state) {
  const double norm2 = state.amplitudes.squaredNorm();
  if (!(state.weight > 0.0) || !(norm2 > 0.0))
    throw Error(ErrorKind::ZeroWeight, "concurrence of a zero-weight state");
  const Eigen::Vector4cd a = state.amplitudes / std::sqrt(norm2);
  return std::min(1.0, 2.0 * std::abs(a(0) * a(3) - a(1) * a(2)));
}

}  // namespace dholo
