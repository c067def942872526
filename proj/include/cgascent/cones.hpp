#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "cgascent/linalg.hpp"

namespace cgascent {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Angle in radians between two nonzero vectors, accurate near 0 and pi.
double angle_between(std::span<const double> x, std::span<const double> y);

/// Set of vectors within `half_angle` of `axis`. Closed and convex for
/// half-angles up to pi/2.
class CircularCone {
 public:
  /// Normalizes `axis`; throws InvalidArgument for a zero axis or a
  /// half-angle outside [0, pi/2].
  CircularCone(Vector axis, double half_angle);

  const Vector& axis() const noexcept { return axis_; }
  double half_angle() const noexcept { return half_angle_; }
  std::size_t dim() const noexcept { return axis_.size(); }

  bool contains(std::span<const double> x, double angular_tol = 0.0) const;

 private:
  Vector axis_;
  double half_angle_;
};

/// Cones coupled by additive half-angle enlargement, clamped at pi/2:
/// alpha_i(gamma) = min(alpha_i + gamma, pi/2). gamma = 0 is the identity and
/// enlargement is monotone in gamma.
class CouplingFamily {
 public:
  explicit CouplingFamily(std::vector<CircularCone> base_cones);

  const std::vector<CircularCone>& base_cones() const noexcept { return cones_; }
  std::size_t size() const noexcept { return cones_.size(); }
  std::size_t dim() const noexcept { return cones_.front().dim(); }

  double enlarged_half_angle(std::size_t i, double gamma) const;
  CircularCone enlarged(std::size_t i, double gamma) const;

  /// max_i (angle(x, c_i) - alpha_i(gamma)); <= 0 iff x is in every enlarged cone.
  double violation(std::span<const double> x, double gamma) const;

 private:
  std::vector<CircularCone> cones_;
};

struct FeasibilityOptions {
  int restarts = 64;
  int iterations = 500;
  double initial_step = 0.1;
  /// Geometric-step refinement run from the best restarts.
  int refine_iterations = 4000;
  int refine_starts = 4;
  double refine_initial_step = 2e-2;
  double refine_final_step = 1e-13;
  double feasibility_tol = 1e-9;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct FeasibilityResult {
  bool feasible = false;
  /// Smallest violation found (radians); <= feasibility_tol when feasible.
  double residual = 0.0;
  /// Minimizing unit vector; present only when feasible.
  std::optional<Vector> witness;
};

/// Minimizes the violation over the unit sphere by projected subgradient
/// descent from the cone axes, their mean, and random restarts.
FeasibilityResult is_feasible(const CouplingFamily& family, double gamma,
                              const FeasibilityOptions& options = {});

struct ThresholdResult {
  /// Midpoint of the final bracket.
  double gamma_star = 0.0;
  /// Largest gamma certified infeasible (equals upper when feasible at 0).
  double lower = 0.0;
  /// Smallest gamma found feasible.
  double upper = 0.0;
  bool lower_certified_infeasible = false;
  /// Unit vector in every cone enlarged by `upper`.
  Vector witness;
  /// Bracket width at termination.
  double tolerance = 0.0;
};

/// Bisection for the smallest coupling level at which all enlarged cones
/// share a unit direction. Throws InfeasibleAtMax when gamma = pi/2 fails.
ThresholdResult find_gamma_star(const CouplingFamily& family, double tol,
                                const FeasibilityOptions& options = {});

struct PhiEstimate {
  double gamma = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Fraction of uniform unit-sphere samples inside every enlarged cone.
PhiEstimate phi(const CouplingFamily& family, double gamma, std::size_t samples,
                std::uint64_t seed);

/// Same sample set for every gamma, so the estimates are nondecreasing.
/// Throws InvalidArgument for an empty or non-ascending grid.
std::vector<PhiEstimate> phi_curve(const CouplingFamily& family, std::span<const double> gammas,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace cgascent
