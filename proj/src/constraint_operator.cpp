#include "cgascent/constraint_operator.hpp"

#include <cmath>
#include <memory>

#include "cgascent/errors.hpp"

namespace cgascent {

ConstraintOperator::ConstraintOperator(SymmetricMatrix matrix, std::optional<double> rank_tolerance)
    : matrix_(std::move(matrix)),
      spectrum_(decompose(matrix_, rank_tolerance)),
      pinv_(cgascent::pseudoinverse(spectrum_)) {}

Vector ConstraintOperator::project_onto_image(std::span<const double> v) const {
  return cgascent::project_onto_image(spectrum_, v);
}

Vector ConstraintOperator::kernel_component(std::span<const double> v) const {
  return subtract(v, project_onto_image(v));
}

EffortValue effort(const ConstraintOperator& h, std::span<const double> d) {
  require_dim(d, h.ambient_dim());
  const double e = dot(d, h.apply(d));
  return {e > 0.0 ? e : 0.0};
}

EffortValue spectral_effort(const ConstraintOperator& h, std::span<const double> d) {
  require_dim(d, h.ambient_dim());
  const auto& s = h.spectrum();
  double e = 0.0;
  for (std::size_t i = 0; i < s.rank; ++i) {
    const double c = dot(d, s.eigenvectors[i]);
    e += s.eigenvalues[i] * c * c;
  }
  return {e};
}

bool is_admissible(const ConstraintOperator& h, std::span<const double> d, double tol) {
  require_dim(d, h.ambient_dim());
  const double dn = norm(d);
  if (dn == 0.0) throw InvalidArgument("admissibility is undefined for the zero vector");
  if (norm(h.kernel_component(d)) > tol * dn) return false;
  return std::abs(effort(h, d).value - 1.0) <= tol;
}

Vector normalize_effort(const ConstraintOperator& h, std::span<const double> d,
                        double effort_floor) {
  const EffortValue e = effort(h, d);
  if (e.value <= effort_floor) {
    throw DegenerateDirection("direction has effort " + std::to_string(e.value) +
                              " at or below the floor " + std::to_string(effort_floor));
  }
  return scaled(d, 1.0 / std::sqrt(e.value));
}

namespace operator_fields {

OperatorField constant(ConstraintOperator h) {
  auto shared = std::make_shared<const ConstraintOperator>(std::move(h));
  return [shared](std::span<const double> theta) {
    require_dim(theta, shared->ambient_dim());
    return *shared;
  };
}

OperatorField diag_decay(std::size_t dim, double a, double rho) {
  if (!(a > 0.0) || !(rho > 0.0)) throw InvalidArgument("diag_decay needs a > 0 and rho > 0");
  std::vector<double> diag(dim);
  double lambda = a;
  for (std::size_t i = 0; i < dim; ++i, lambda *= rho) diag[i] = lambda;
  return constant(ConstraintOperator(SymmetricMatrix::diagonal(diag)));
}

OperatorField mask(std::span<const int> mask) {
  std::vector<double> diag;
  diag.reserve(mask.size());
  for (int m : mask) {
    if (m != 0 && m != 1) throw InvalidArgument("mask entries must be 0 or 1");
    diag.push_back(m);
  }
  return constant(ConstraintOperator(SymmetricMatrix::diagonal(diag)));
}

}  // namespace operator_fields

}  // namespace cgascent
