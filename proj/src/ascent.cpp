#include "cgascent/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cgascent/errors.hpp"

namespace cgascent {

namespace objectives {

Objective quadratic(SymmetricMatrix a, Vector b) {
  if (b.size() != a.dim()) throw DimensionMismatch(a.dim(), b.size());
  auto shared_a = std::make_shared<const SymmetricMatrix>(std::move(a));
  auto shared_b = std::make_shared<const Vector>(std::move(b));
  Objective o;
  o.evaluate = [shared_a, shared_b](std::span<const double> theta) {
    return -0.5 * dot(theta, shared_a->apply(theta)) + dot(*shared_b, theta);
  };
  o.gradient = [shared_a, shared_b](std::span<const double> theta) {
    Vector g = shared_a->apply(theta);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (*shared_b)[i] - g[i];
    return g;
  };
  return o;
}

Objective rosenbrock(double a, double b) {
  Objective o;
  o.evaluate = [a, b](std::span<const double> t) {
    require_dim(t, 2);
    const double r = t[1] - t[0] * t[0];
    return -((a - t[0]) * (a - t[0]) + b * r * r);
  };
  o.gradient = [a, b](std::span<const double> t) {
    require_dim(t, 2);
    const double r = t[1] - t[0] * t[0];
    return Vector{2.0 * (a - t[0]) + 4.0 * b * t[0] * r, -2.0 * b * r};
  };
  return o;
}

}  // namespace objectives

namespace budgets {

BudgetConstraint sphere(Vector center, double kappa) {
  if (!(kappa > 0.0)) throw InvalidArgument("budget kappa must be positive");
  auto c = std::make_shared<const Vector>(std::move(center));
  BudgetConstraint b;
  b.kappa = kappa;
  b.cost = [c](std::span<const double> theta) {
    const Vector d = subtract(theta, *c);
    return dot(d, d);
  };
  b.cost_gradient = [c](std::span<const double> theta) { return scaled(subtract(theta, *c), 2.0); };
  return b;
}

BudgetConstraint linear(Vector a, double kappa) {
  if (!(kappa > 0.0)) throw InvalidArgument("budget kappa must be positive");
  auto normal = std::make_shared<const Vector>(std::move(a));
  BudgetConstraint b;
  b.kappa = kappa;
  b.cost = [normal](std::span<const double> theta) { return dot(*normal, theta); };
  b.cost_gradient = [normal](std::span<const double> theta) {
    require_dim(theta, normal->size());
    return *normal;
  };
  return b;
}

}  // namespace budgets

GradientCheck check_gradient(const ScalarField& f, const VectorField& gradient,
                             std::span<const Vector> probes, double tol) {
  GradientCheck out;
  for (const Vector& x : probes) {
    const Vector g = gradient(x);
    require_dim(g, x.size());
    Vector probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
      probe[i] = x[i] + h;
      const double up = f(probe);
      probe[i] = x[i] - h;
      const double down = f(probe);
      probe[i] = x[i];
      const double fd = (up - down) / (2.0 * h);
      const double err = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
      out.worst_relative_error = std::max(out.worst_relative_error, err);
    }
  }
  out.passed = out.worst_relative_error <= tol;
  return out;
}

namespace {

bool is_active(double cost, double kappa) {
  return kappa - cost < kActivationTol * std::max(1.0, kappa);
}

// Removes from v the component along n, where n spans the Im(H)-restricted
// budget normal.
Vector remove_normal(std::span<const double> v, std::span<const double> n) {
  Vector out(v.begin(), v.end());
  axpy(-dot(n, v) / dot(n, n), n, out);
  return out;
}

}  // namespace

DirectionResult feasible_direction(const ConstraintOperator& h, std::span<const double> g,
                                   const BudgetConstraint& budget, std::span<const double> theta) {
  require_dim(theta, h.ambient_dim());
  const double cost = budget.cost(theta);
  if (cost > budget.kappa + kBudgetSlack) throw InfeasibleStart(cost, budget.kappa);

  DirectionResult d = optimal_direction(h, g);
  if (!d.optimal() || !is_active(cost, budget.kappa)) return d;

  const Vector cost_grad = budget.cost_gradient(theta);
  if (dot(cost_grad, d.direction) <= 0.0) return d;

  const Vector normal = h.project_onto_image(cost_grad);
  if (dot(normal, normal) == 0.0) return d;

  // Projection in the effort metric: H^+(g - mu grad C) with <grad C, .> = 0.
  const Vector p = h.apply_pseudoinverse(g);
  const Vector m = h.apply_pseudoinverse(normal);
  Vector projected = p;
  axpy(-dot(normal, p) / dot(normal, m), m, projected);
  DirectionResult out;
  out.budget_projected = true;
  out.gradient_norm_h = d.gradient_norm_h;
  const double e = effort(h, projected).value;
  if (e < kEffortFloor) return out;
  out.kind = DirectionKind::Optimal;
  out.raw_norm_h = std::sqrt(e);
  out.direction = scaled(projected, 1.0 / out.raw_norm_h);
  out.first_order_gain = dot(g, out.direction);
  return out;
}

double projected_gradient_norm(const ConstraintOperator& h, std::span<const double> g,
                               const std::optional<BudgetConstraint>& budget,
                               std::span<const double> theta) {
  Vector q = h.project_onto_image(g);
  if (budget && is_active(budget->cost(theta), budget->kappa)) {
    const Vector normal = h.project_onto_image(budget->cost_gradient(theta));
    if (dot(normal, normal) > 0.0 && dot(normal, q) > 0.0) q = remove_normal(q, normal);
  }
  return norm(q);
}

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::Completed:
      return "completed";
    case RunStatus::Degenerate:
      return "degenerate";
    case RunStatus::BudgetStall:
      return "budget_stall";
  }
  return "unknown";
}

namespace {

// Newton steps on C(x) = kappa along the Im(H)-projected cost gradient.
void restore(Vector& x, const ConstraintOperator& h, const BudgetConstraint& budget, int iterations) {
  for (int i = 0; i < iterations; ++i) {
    const double c = budget.cost(x);
    if (c <= budget.kappa) return;
    const Vector n = h.project_onto_image(budget.cost_gradient(x));
    const double slope = dot(n, n);
    if (!(slope > 0.0)) return;
    axpy(-(c - budget.kappa) / slope, n, x);
  }
}

}  // namespace

TrajectoryRecord run_ascent(const Objective& objective, const OperatorField& field,
                            const std::optional<BudgetConstraint>& budget, Vector theta0,
                            const AscentOptions& options) {
  if (!(options.eta > 0.0)) throw InvalidArgument("step size eta must be positive");
  if (budget) {
    const double c0 = budget->cost(theta0);
    if (c0 > budget->kappa + kBudgetSlack) throw InfeasibleStart(c0, budget->kappa);
  }

  TrajectoryRecord record;
  Vector theta = std::move(theta0);
  for (std::size_t t = 0;; ++t) {
    const ConstraintOperator h = field(theta);
    const Vector g = objective.gradient(theta);

    TrajectoryStep row;
    row.step = t;
    row.theta = theta;
    row.objective = objective.evaluate(theta);
    row.cost = budget ? budget->cost(theta) : 0.0;
    row.budget_active = budget && is_active(row.cost, budget->kappa);

    const DirectionResult dir = budget ? feasible_direction(h, g, *budget, theta) : optimal_direction(h, g);
    row.kind = dir.kind;
    row.first_order_gain = dir.first_order_gain;

    if (t == options.steps) {
      record.steps.push_back(std::move(row));
      record.status = RunStatus::Completed;
      break;
    }
    if (!dir.optimal()) {
      record.steps.push_back(std::move(row));
      record.status = RunStatus::Degenerate;
      break;
    }

    const double length = options.scaling == StepScaling::GainScaled ? dir.raw_norm_h : 1.0;
    double eta = options.eta;
    bool accepted = false;
    Vector candidate;
    for (int attempt = 0; attempt <= options.max_backtracks; ++attempt, eta *= 0.5) {
      candidate = theta;
      axpy(eta * length, dir.direction, candidate);
      if (!budget) {
        accepted = true;
        break;
      }
      restore(candidate, h, *budget, options.restoration_iterations);
      if (budget->cost(candidate) <= budget->kappa + kBudgetSlack) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      record.steps.push_back(std::move(row));
      record.status = RunStatus::BudgetStall;
      break;
    }
    row.eta_effective = eta;
    record.steps.push_back(std::move(row));
    theta = std::move(candidate);
  }
  return record;
}

}  // namespace cgascent
