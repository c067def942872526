#include "cgascent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cgascent/errors.hpp"

namespace cgascent {
namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(2.0 * s);
}

// Applies the rotation that annihilates a(p, q) to the working matrix and
// accumulates it into v (columns are eigenvectors).
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n, std::size_t p,
            std::size_t q) {
  const double apq = a[p * n + q];
  const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a[p * n + p] -= t * apq;
  a[q * n + q] += t * apq;
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;

  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a[r * n + p];
    const double arq = a[r * n + q];
    const double new_rp = arp - s * (arq + tau * arp);
    const double new_rq = arq + s * (arp - tau * arq);
    a[r * n + p] = a[p * n + r] = new_rp;
    a[r * n + q] = a[q * n + r] = new_rq;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = v[r * n + p];
    const double vrq = v[r * n + q];
    v[r * n + p] = vrp - s * (vrq + tau * vrp);
    v[r * n + q] = vrq + s * (vrp - tau * vrq);
  }
}

void fix_sign(Vector& u) {
  for (double x : u) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0)
        for (double& y : u) y = -y;
      return;
    }
  }
}

}  // namespace

SpectralDecomposition decompose(const SymmetricMatrix& matrix, std::optional<double> rank_tolerance,
                                const JacobiOptions& options) {
  if (rank_tolerance && !(*rank_tolerance >= 0.0))
    throw InvalidArgument("rank tolerance must be nonnegative");

  const std::size_t n = matrix.dim();
  std::vector<double> a(matrix.data().begin(), matrix.data().end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double scale = matrix.frobenius_norm();
  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal_norm(a, n);
    if (off == 0.0 || off <= 1e-15 * scale) break;
    if (sweep == options.max_sweeps) throw NotConverged(sweep, off);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        // after a few sweeps, drop entries that are negligible against both diagonals
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a[p * n + p]) + g == std::abs(a[p * n + p]) &&
            std::abs(a[q * n + q]) + g == std::abs(a[q * n + q])) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        rotate(a, v, n, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // stable so that equal eigenvalues keep the deterministic column order
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

  SpectralDecomposition d;
  d.eigenvalues.reserve(n);
  d.eigenvectors.reserve(n);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(a[i * n + i]));
  const double clamp_window = options.psd_slack * std::max(1.0, max_abs);

  for (std::size_t k : order) {
    double lambda = a[k * n + k];
    if (lambda < 0.0) {
      if (lambda < -clamp_window) throw NotPositiveSemidefinite(lambda);
      lambda = 0.0;
    }
    Vector u(n);
    for (std::size_t r = 0; r < n; ++r) u[r] = v[r * n + k];
    fix_sign(u);
    d.eigenvalues.push_back(lambda);
    d.eigenvectors.push_back(std::move(u));
  }

  d.rank_tolerance = rank_tolerance ? *rank_tolerance : options.relative_rank_tolerance * d.largest();
  d.rank = static_cast<std::size_t>(
      std::count_if(d.eigenvalues.begin(), d.eigenvalues.end(),
                    [&](double lambda) { return lambda > d.rank_tolerance; }));
  return d;
}

SymmetricMatrix pseudoinverse(const SpectralDecomposition& d) {
  SymmetricMatrix out(d.dim());
  for (std::size_t i = 0; i < d.rank; ++i) out.add_outer(1.0 / d.eigenvalues[i], d.eigenvectors[i]);
  return out;
}

Vector project_onto_image(const SpectralDecomposition& d, std::span<const double> v) {
  require_dim(v, d.dim());
  Vector out(d.dim(), 0.0);
  for (std::size_t i = 0; i < d.rank; ++i) axpy(dot(v, d.eigenvectors[i]), d.eigenvectors[i], out);
  return out;
}

SymmetricMatrix reconstruct(const SpectralDecomposition& d) {
  SymmetricMatrix out(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) out.add_outer(d.eigenvalues[i], d.eigenvectors[i]);
  return out;
}

}  // namespace cgascent
