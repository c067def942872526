#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cgascent/constraint_operator.hpp"
#include "cgascent/direction.hpp"

namespace cgascent {

using ScalarField = std::function<double(std::span<const double>)>;
using VectorField = std::function<Vector(std::span<const double>)>;

/// Payoff to be increased, with its gradient.
struct Objective {
  ScalarField evaluate;
  VectorField gradient;
};

namespace objectives {

/// J(theta) = -1/2 theta^T A theta + b^T theta.
Objective quadratic(SymmetricMatrix a, Vector b);

/// Negated Rosenbrock function -((a - x)^2 + b (y - x^2)^2) in two variables.
Objective rosenbrock(double a = 1.0, double b = 100.0);

}  // namespace objectives

/// Budget C(theta) <= kappa.
struct BudgetConstraint {
  ScalarField cost;
  VectorField cost_gradient;
  double kappa = 1.0;
};

namespace budgets {

/// C(theta) = |theta - center|^2.
BudgetConstraint sphere(Vector center, double kappa);

/// C(theta) = a^T theta.
BudgetConstraint linear(Vector a, double kappa);

}  // namespace budgets

struct GradientCheck {
  bool passed = true;
  double worst_relative_error = 0.0;
};

/// Compares `gradient` with central differences of `f` at random probes.
/// The relative error is |fd - g| / max(1, |g|) taken over coordinates.
GradientCheck check_gradient(const ScalarField& f, const VectorField& gradient,
                             std::span<const Vector> probes, double tol = 1e-5);

/// Budget activity threshold: kappa - C < kActivationTol * max(1, kappa).
inline constexpr double kActivationTol = 1e-8;
/// Accepted iterates satisfy C <= kappa + kBudgetSlack.
inline constexpr double kBudgetSlack = 1e-8;

/// Optimal direction, restricted to the halfspace <grad C, d> <= 0 when the
/// budget is active. Inside the budget this is optimal_direction unchanged.
/// Throws InfeasibleStart when C(theta) > kappa + kBudgetSlack.
DirectionResult feasible_direction(const ConstraintOperator& h, std::span<const double> g,
                                   const BudgetConstraint& budget, std::span<const double> theta);

enum class StepScaling {
  /// theta += eta * |H^+ g|_H * d, i.e. eta * H^+ g on the unconstrained branch.
  GainScaled,
  /// theta += eta * d with d at unit effort.
  UnitEffort,
};

enum class RunStatus { Completed, Degenerate, BudgetStall };

const char* to_string(RunStatus status) noexcept;

struct TrajectoryStep {
  std::size_t step = 0;
  Vector theta;
  double objective = 0.0;
  /// Budget cost; 0 when the run has no budget.
  double cost = 0.0;
  DirectionKind kind = DirectionKind::Degenerate;
  double first_order_gain = 0.0;
  /// Step size actually applied after any backtracking (0 on the last row).
  double eta_effective = 0.0;
  bool budget_active = false;
};

struct TrajectoryRecord {
  std::vector<TrajectoryStep> steps;
  RunStatus status = RunStatus::Completed;
  /// Free-form tag for the agent or experiment that produced the run.
  std::string agent;

  const TrajectoryStep& last() const { return steps.back(); }
};

struct AscentOptions {
  std::size_t steps = 1000;
  double eta = 0.1;
  StepScaling scaling = StepScaling::GainScaled;
  int max_backtracks = 20;
  /// Newton pull-backs onto C = kappa (inside Im(H)) tried before halving eta.
  int restoration_iterations = 5;
};

/// Iterates theta <- theta + eta * step(direction). Row t of the record holds
/// the state at iterate t and the step taken from it; the final row is the
/// terminal state. Stops early on a Degenerate direction or when halving eta
/// `max_backtracks` times cannot keep the budget.
TrajectoryRecord run_ascent(const Objective& objective, const OperatorField& field,
                            const std::optional<BudgetConstraint>& budget, Vector theta0,
                            const AscentOptions& options);

/// Norm of the gradient after the same Im(H) and active-halfspace projection
/// feasible_direction uses, measured in the Euclidean norm.
double projected_gradient_norm(const ConstraintOperator& h, std::span<const double> g,
                               const std::optional<BudgetConstraint>& budget,
                               std::span<const double> theta);

}  // namespace cgascent
