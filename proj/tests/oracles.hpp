#pragma once

// Independent reference constructions for the unit and acceptance tests.
// Nothing here calls into the library's numerical code.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

struct Angles {
  double theta;
  double phi;
};

// J_y and J_z from <m+1|J+|m> = sqrt(j(j+1) - m(m+1)), basis m = j ... -j.
inline Mat jz(int twice_j) {
  const int dim = twice_j + 1;
  Mat m = Mat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = 0.5 * twice_j - k;
  return m;
}

inline Mat jplus(int twice_j) {
  const int dim = twice_j + 1;
  const double j = 0.5 * twice_j;
  Mat m = Mat::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    const double mm = j - k;
    m(k - 1, k) = std::sqrt(j * (j + 1) - mm * (mm + 1));
  }
  return m;
}

inline Mat jy(int twice_j) {
  const Mat p = jplus(twice_j);
  return (p - p.adjoint()) / cd(0.0, 2.0);
}

inline Mat jx(int twice_j) {
  const Mat p = jplus(twice_j);
  return (p + p.adjoint()) / 2.0;
}

inline Mat expm(const Mat& m) { return m.exp(); }

// exp(-i phi Jz) exp(-i theta Jy) by Pade scaling and squaring.
inline Mat rotation(int twice_j, double theta, double phi) {
  const cd minus_i(0.0, -1.0);
  return expm(minus_i * phi * jz(twice_j)) * expm(minus_i * theta * jy(twice_j));
}

// Columns |+j;n> and |-j;n>.
inline Mat frame(int twice_j, Angles a) {
  const Mat r = rotation(twice_j, a.theta, a.phi);
  Mat f(twice_j + 1, 2);
  f.col(0) = r.col(0);
  f.col(1) = r.col(twice_j);
  return f;
}

// Product of the frame overlaps F_{k+1}^dagger F_k in traversal order.
inline Mat holonomy(int twice_j, const std::vector<Angles>& path) {
  Mat d = Mat::Identity(2, 2);
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    d = frame(twice_j, path[k + 1]).adjoint() * frame(twice_j, path[k]) * d;
  return d;
}

// Coordinates of the state left after filtering a + b frame input through
// every vertex with explicit rank-2 projectors.
inline Vec filtered_coordinates(int twice_j, const std::vector<Angles>& path, const Vec& input) {
  Vec state = frame(twice_j, path.front()) * input;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Mat f = frame(twice_j, path[k]);
    state = f * (f.adjoint() * state);
  }
  return frame(twice_j, path.back()).adjoint() * state;
}

// Normalized symmetric sum over 2j-bit strings with `downs` ones; qubit 0 is
// the most significant bit.
inline Vec symmetric_state(int twice_j, int downs) {
  const int n = twice_j;
  Vec v = Vec::Zero(1 << n);
  int count = 0;
  for (int s = 0; s < (1 << n); ++s) {
    int ones = 0;
    for (int b = 0; b < n; ++b) ones += (s >> b) & 1;
    if (ones == downs) {
      v(s) = 1.0;
      ++count;
    }
  }
  return v / std::sqrt(static_cast<double>(count));
}

// (cos(theta/2) e^{-i phi/2}, sin(theta/2) e^{i phi/2}) on each of 2j qubits.
inline Vec product_coherent(int twice_j, Angles a) {
  Vec q(2);
  q << std::polar(std::cos(a.theta / 2), -a.phi / 2), std::polar(std::sin(a.theta / 2), a.phi / 2);
  Vec v = Vec::Ones(1);
  for (int k = 0; k < twice_j; ++k) {
    Vec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q(0);
      next(2 * i + 1) = v(i) * q(1);
    }
    v = next;
  }
  return v;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

inline Angles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {std::acos(1.0 - 2.0 * u(rng)), 2.0 * pi * u(rng)};
}

inline Vec random_state(std::mt19937_64& rng, int dim = 2) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (int k = 0; k < dim; ++k) v(k) = cd(g(rng), g(rng));
  return v / v.norm();
}

// Haar SU(2) from a random unit quaternion.
inline Mat random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double q[4];
  double n = 0;
  for (double& x : q) {
    x = g(rng);
    n += x * x;
  }
  n = std::sqrt(n);
  Mat u(2, 2);
  u << cd(q[0], q[3]) / n, cd(q[2], q[1]) / n, cd(-q[2], q[1]) / n, cd(q[0], -q[3]) / n;
  return u;
}

// |tr(U^dagger V)| / 2
inline double phase_fidelity(const Mat& u, const Mat& v) { return std::abs((u.adjoint() * v).trace()) / 2.0; }

}  // namespace oracle
