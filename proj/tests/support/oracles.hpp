#pragma once

// Independent reference computations. Nothing here calls the Jacobi solver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cgascent/linalg.hpp"

namespace cgascent::testing {

inline Eigen::MatrixXd to_eigen(const SymmetricMatrix& m) {
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Eigen::VectorXd to_eigen(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) by
/// Faddeev-LeVerrier, then roots as eigenvalues of the companion matrix.
inline std::vector<double> characteristic_roots(const SymmetricMatrix& m) {
  const Eigen::MatrixXd a = to_eigen(m);
  const auto n = a.rows();
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -(a * mk).trace() / static_cast<double>(k);
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i).real());
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

/// Largest |eigenvalue| of a symmetric matrix by power iteration (Rayleigh quotient).
inline double power_iteration_norm(const Eigen::MatrixXd& m, int iterations = 5000, unsigned seed = 7) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(m.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
  x.normalize();
  double rq = 0.0;
  for (int t = 0; t < iterations; ++t) {
    Eigen::VectorXd y = m * x;
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    rq = x.dot(y);
    x = y / ny;
  }
  return std::abs(rq);
}

/// Brute-force search over unit-effort directions of Im(H), parameterized by
/// explicit matrix products: z -> P z with P the orthogonal projector onto
/// Im(H) (built by the caller from a known basis), scaled to effort 1.
struct BruteForceMax {
  double best_gain = -1e300;
  Eigen::VectorXd best_direction;
  double max_abs_gain = 0.0;
};

inline BruteForceMax brute_force_gain(const Eigen::MatrixXd& h, const Eigen::MatrixXd& proj,
                                      const Eigen::VectorXd& g, std::size_t samples, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  BruteForceMax out;
  Eigen::VectorXd z(h.rows());
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
    Eigen::VectorXd d = proj * z;
    const double e = d.dot(h * d);
    if (!(e > 0.0)) continue;
    d /= std::sqrt(e);
    const double gain = g.dot(d);
    out.max_abs_gain = std::max(out.max_abs_gain, std::abs(gain));
    if (gain > out.best_gain) {
      out.best_gain = gain;
      out.best_direction = d;
    }
  }
  return out;
}

inline Eigen::MatrixXd projector(const std::vector<Vector>& basis, std::size_t count) {
  const auto n = static_cast<Eigen::Index>(basis.front().size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::VectorXd u = to_eigen(basis[i]);
    p += u * u.transpose();
  }
  return p;
}

inline double angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

/// Fraction of the 2-sphere covered by a cap of half-angle alpha.
inline double cap_fraction_3d(double alpha) { return (1.0 - std::cos(alpha)) / 2.0; }

/// Two circular cones meet beyond the origin iff angle(c1, c2) <= a1 + a2.
inline double two_cone_gamma_star(double axis_angle, double a1, double a2) {
  return std::max(0.0, (axis_angle - a1 - a2) / 2.0);
}

}  // namespace cgascent::testing
