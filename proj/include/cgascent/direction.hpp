#pragma once

#include <random>
#include <span>
#include <vector>

#include "cgascent/constraint_operator.hpp"

namespace cgascent {

enum class DirectionKind { Optimal, Degenerate };

const char* to_string(DirectionKind kind) noexcept;

struct DirectionResult {
  DirectionKind kind = DirectionKind::Degenerate;
  /// Unit-effort direction; empty when Degenerate.
  Vector direction;
  /// <g, direction>; zero when Degenerate.
  double first_order_gain = 0.0;
  /// |H^+ g|_H, the largest gain any unit-effort direction can reach.
  double gradient_norm_h = 0.0;
  /// |v|_H of the unnormalized vector v that `direction` normalizes: H^+ g,
  /// or its budget projection. Equals gradient_norm_h when not projected.
  double raw_norm_h = 0.0;
  /// Set when a budget halfspace reshaped the direction (see ascent.hpp).
  bool budget_projected = false;

  bool optimal() const noexcept { return kind == DirectionKind::Optimal; }
};

/// Relative threshold of the degeneracy test |H g| <= tol * |H|_op * |g|.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Best unit-effort reachable direction for gradient g: the ray of H^+ g.
/// Returns Degenerate when g is (numerically) in ker(H), including g = 0.
DirectionResult optimal_direction(const ConstraintOperator& h, std::span<const double> g);

/// <g, d> for an admissible d; throws InadmissibleDirection otherwise.
double first_order_gain(const ConstraintOperator& h, std::span<const double> g,
                        std::span<const double> d, double admissibility_tol = 1e-6);

/// Draws unit-effort directions in Im(H): Gaussian coefficients in the
/// eigenbasis of the image, rescaled to effort 1. Empty when rank is 0.
std::vector<Vector> sample_admissible_directions(const ConstraintOperator& h, std::size_t count,
                                                 std::mt19937_64& rng);

}  // namespace cgascent
