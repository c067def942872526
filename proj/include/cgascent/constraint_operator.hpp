#pragma once

#include <functional>
#include <span>

#include "cgascent/linalg.hpp"
#include "cgascent/spectral.hpp"

namespace cgascent {

/// Squared effort <d, H d> of a first-order variation; never negative.
struct EffortValue {
  double value = 0.0;

  friend auto operator<=>(const EffortValue&, const EffortValue&) = default;
};

inline constexpr double kEffortFloor = 1e-14;

/// Self-adjoint PSD operator describing which directions are reachable at a
/// point and how expensive they are. The spectrum is computed once at
/// construction; the image of the operator is the reachable subspace and its
/// kernel the unreachable complement.
class ConstraintOperator {
 public:
  explicit ConstraintOperator(SymmetricMatrix matrix,
                              std::optional<double> rank_tolerance = std::nullopt);

  const SymmetricMatrix& matrix() const noexcept { return matrix_; }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
  const SymmetricMatrix& pseudoinverse() const noexcept { return pinv_; }

  std::size_t ambient_dim() const noexcept { return matrix_.dim(); }
  std::size_t reachable_dim() const noexcept { return spectrum_.rank; }
  std::size_t kernel_dim() const noexcept { return ambient_dim() - reachable_dim(); }
  /// Operator norm, i.e. the largest eigenvalue.
  double norm() const noexcept { return spectrum_.largest(); }

  Vector apply(std::span<const double> v) const { return matrix_.apply(v); }
  Vector apply_pseudoinverse(std::span<const double> v) const { return pinv_.apply(v); }
  Vector project_onto_image(std::span<const double> v) const;
  /// v minus its image component.
  Vector kernel_component(std::span<const double> v) const;

 private:
  SymmetricMatrix matrix_;
  SpectralDecomposition spectrum_;
  SymmetricMatrix pinv_;
};

EffortValue effort(const ConstraintOperator& h, std::span<const double> d);

/// Effort through the spectral form sum lambda_i <d, u_i>^2.
EffortValue spectral_effort(const ConstraintOperator& h, std::span<const double> d);

/// True iff d lies in Im(H) up to tol * |d| and has unit effort up to tol.
/// Throws InvalidArgument for the zero vector.
bool is_admissible(const ConstraintOperator& h, std::span<const double> d, double tol);

/// d / sqrt(effort(d)). Throws DegenerateDirection when effort(d) <= floor.
Vector normalize_effort(const ConstraintOperator& h, std::span<const double> d,
                        double effort_floor = kEffortFloor);

/// Maps a point to the operator governing that point.
using OperatorField = std::function<ConstraintOperator(std::span<const double>)>;

namespace operator_fields {

OperatorField constant(ConstraintOperator h);

/// diag(a, a*rho, a*rho^2, ...); eigenvalue i is a * rho^i.
OperatorField diag_decay(std::size_t dim, double a, double rho);

/// Coordinate projection: diag(mask) with entries 0 or 1.
OperatorField mask(std::span<const int> mask);

}  // namespace operator_fields

}  // namespace cgascent
