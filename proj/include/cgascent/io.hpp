#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cgascent/ascent.hpp"
#include "cgascent/cones.hpp"
#include "cgascent/constraint_operator.hpp"
#include "cgascent/direction.hpp"
#include "cgascent/rule_kernel.hpp"

namespace cgascent::io {

using nlohmann::json;

json read_json(const std::filesystem::path& path);

/// {"dim": n, "entries": [[...], ...]}
SymmetricMatrix matrix_from_json(const json& j);
json matrix_to_json(const SymmetricMatrix& m);

/// A plain array of numbers.
Vector vector_from_json(const json& j);

/// [{"axis": [...], "half_angle_deg": x}, ...]
CouplingFamily cones_from_json(const json& j);

/// {"kind": "constant", "matrix": {...}} | {"kind": "diag_decay", "dim", "a", "rho"}
/// | {"kind": "mask", "mask": [0|1, ...]}
OperatorField operator_field_from_json(const json& j);

/// {"kind": "quadratic", "A": matrix, "b": [...]} | {"kind": "rosenbrock", "a", "b"}
Objective objective_from_json(const json& j);

/// null | {"kind": "sphere", "kappa", "center"?} | {"kind": "linear", "a": [...], "kappa"}.
/// The sphere center defaults to the origin of R^dim.
std::optional<BudgetConstraint> budget_from_json(const json& j, std::size_t dim);

struct OptimizeConfig {
  Objective objective;
  OperatorField field;
  std::optional<BudgetConstraint> budget;
  Vector theta0;
  AscentOptions options;
  std::optional<std::string> out;
  std::string agent;
};

OptimizeConfig optimize_config_from_json(const json& j);

json direction_to_json(const DirectionResult& d);
json threshold_to_json(const ThresholdResult& r);
json compress_to_json(const RuleKernel& kernel, const ResidualReport& report);

/// Formats a double with round-trip precision.
std::string format_number(double x);

/// step, theta_0..theta_{n-1}, J, C, gain, kind, eta_eff
std::string trace_csv(const TrajectoryRecord& record);

}  // namespace cgascent::io
