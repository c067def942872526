#include "cgascent/direction.hpp"

#include <cmath>

#include "cgascent/errors.hpp"

namespace cgascent {

const char* to_string(DirectionKind kind) noexcept {
  return kind == DirectionKind::Optimal ? "Optimal" : "Degenerate";
}

DirectionResult optimal_direction(const ConstraintOperator& h, std::span<const double> g) {
  require_dim(g, h.ambient_dim());
  DirectionResult result;
  const double gn = norm(g);
  if (gn == 0.0 || norm(h.apply(g)) <= kDegeneracyTolerance * h.norm() * gn) return result;

  Vector p = h.apply_pseudoinverse(g);
  const double e = effort(h, p).value;
  if (!(e > 0.0)) return result;
  const double hnorm = std::sqrt(e);
  result.kind = DirectionKind::Optimal;
  result.direction = scaled(p, 1.0 / hnorm);
  result.first_order_gain = dot(g, result.direction);
  result.gradient_norm_h = hnorm;
  result.raw_norm_h = hnorm;
  return result;
}

double first_order_gain(const ConstraintOperator& h, std::span<const double> g,
                        std::span<const double> d, double admissibility_tol) {
  require_dim(g, h.ambient_dim());
  require_dim(d, h.ambient_dim());
  if (norm(d) == 0.0 || !is_admissible(h, d, admissibility_tol))
    throw InadmissibleDirection("direction is not a unit-effort vector in the reachable subspace");
  return dot(g, d);
}

std::vector<Vector> sample_admissible_directions(const ConstraintOperator& h, std::size_t count,
                                                 std::mt19937_64& rng) {
  const auto& s = h.spectrum();
  std::vector<Vector> out;
  if (s.rank == 0) return out;
  out.reserve(count);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(s.rank);
  while (out.size() < count) {
    double e = 0.0;
    for (std::size_t i = 0; i < s.rank; ++i) {
      z[i] = normal(rng);
      e += s.eigenvalues[i] * z[i] * z[i];
    }
    if (!(e > 0.0)) continue;
    const double inv = 1.0 / std::sqrt(e);
    Vector d(h.ambient_dim(), 0.0);
    for (std::size_t i = 0; i < s.rank; ++i) axpy(z[i] * inv, s.eigenvectors[i], d);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace cgascent
