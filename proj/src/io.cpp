#include "cgascent/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "cgascent/errors.hpp"

namespace cgascent::io {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InvalidArgument(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

}  // namespace

SymmetricMatrix matrix_from_json(const json& j) {
  const json& entries = field(j, "entries");
  if (!entries.is_array()) throw InvalidArgument("\"entries\" must be a nested array");
  std::vector<std::vector<double>> rows;
  for (const json& row : entries) rows.push_back(vector_from_json(row));
  if (j.contains("dim")) {
    const auto dim = field(j, "dim").get<std::size_t>();
    if (dim != rows.size()) throw DimensionMismatch(dim, rows.size());
  }
  return SymmetricMatrix(rows);
}

json matrix_to_json(const SymmetricMatrix& m) { return {{"dim", m.dim()}, {"entries", m.rows()}}; }

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (const json& x : j) {
    if (!x.is_number()) throw InvalidArgument("expected an array of numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

CouplingFamily cones_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("cone file must hold a JSON list");
  std::vector<CircularCone> cones;
  for (const json& c : j) {
    const double deg = number(c, "half_angle_deg");
    cones.emplace_back(vector_from_json(field(c, "axis")), deg * std::numbers::pi / 180.0);
  }
  return CouplingFamily(std::move(cones));
}

OperatorField operator_field_from_json(const json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "constant") return operator_fields::constant(ConstraintOperator(matrix_from_json(field(j, "matrix"))));
  if (kind == "diag_decay") {
    return operator_fields::diag_decay(field(j, "dim").get<std::size_t>(), number(j, "a"), number(j, "rho"));
  }
  if (kind == "mask") {
    const auto mask = field(j, "mask").get<std::vector<int>>();
    return operator_fields::mask(mask);
  }
  throw InvalidArgument("unknown operator_field kind \"" + kind + "\"");
}

Objective objective_from_json(const json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "quadratic") return objectives::quadratic(matrix_from_json(field(j, "A")), vector_from_json(field(j, "b")));
  if (kind == "rosenbrock") return objectives::rosenbrock(number_or(j, "a", 1.0), number_or(j, "b", 100.0));
  throw InvalidArgument("unknown objective kind \"" + kind + "\"");
}

std::optional<BudgetConstraint> budget_from_json(const json& j, std::size_t dim) {
  if (j.is_null()) return std::nullopt;
  const auto kind = field(j, "kind").get<std::string>();
  const double kappa = number(j, "kappa");
  if (kind == "sphere") {
    Vector center = j.contains("center") ? vector_from_json(j.at("center")) : Vector(dim, 0.0);
    if (center.size() != dim) throw DimensionMismatch(dim, center.size());
    return budgets::sphere(std::move(center), kappa);
  }
  if (kind == "linear") return budgets::linear(vector_from_json(field(j, "a")), kappa);
  throw InvalidArgument("unknown budget kind \"" + kind + "\"");
}

OptimizeConfig optimize_config_from_json(const json& j) {
  OptimizeConfig c;
  c.objective = objective_from_json(field(j, "objective"));
  c.field = operator_field_from_json(field(j, "operator_field"));
  c.theta0 = vector_from_json(field(j, "theta0"));
  if (j.contains("budget")) c.budget = budget_from_json(j.at("budget"), c.theta0.size());
  c.options.steps = field(j, "steps").get<std::size_t>();
  c.options.eta = number(j, "eta");
  if (j.contains("step_scaling")) {
    const auto s = j.at("step_scaling").get<std::string>();
    if (s == "gain_scaled") {
      c.options.scaling = StepScaling::GainScaled;
    } else if (s == "unit_effort") {
      c.options.scaling = StepScaling::UnitEffort;
    } else {
      throw InvalidArgument("unknown step_scaling \"" + s + "\"");
    }
  }
  if (j.contains("out") && !j.at("out").is_null()) c.out = j.at("out").get<std::string>();
  if (j.contains("agent")) c.agent = j.at("agent").get<std::string>();
  return c;
}

json direction_to_json(const DirectionResult& d) {
  json out = {{"kind", to_string(d.kind)}, {"gain", d.first_order_gain}};
  out["direction"] = d.optimal() ? json(d.direction) : json(nullptr);
  out["gradient_norm_h"] = d.gradient_norm_h;
  return out;
}

json threshold_to_json(const ThresholdResult& r) {
  return {{"gamma_star", r.gamma_star},
          {"gamma_star_deg", r.gamma_star * 180.0 / std::numbers::pi},
          {"bracket", {r.lower, r.upper}},
          {"lower_certified_infeasible", r.lower_certified_infeasible},
          {"witness", r.witness},
          {"tolerance", r.tolerance}};
}

json compress_to_json(const RuleKernel& kernel, const ResidualReport& report) {
  json modes = json::array();
  for (const auto& m : report.per_mode_contributions)
    modes.push_back({{"index", m.index}, {"contribution", m.value}});
  return {{"k", kernel.k()},
          {"rank", kernel.source_spectrum().rank},
          {"op_error", kernel.op_error()},
          {"op_norm_error_exact", kernel.operator_norm_error()},
          {"residual_norm_sq", report.residual_norm_sq},
          {"per_mode", modes}};
}

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

std::string trace_csv(const TrajectoryRecord& record) {
  std::string out = "step";
  const std::size_t n = record.steps.empty() ? 0 : record.steps.front().theta.size();
  for (std::size_t i = 0; i < n; ++i) out += fmt::format(",theta_{}", i);
  out += ",J,C,gain,kind,eta_eff\n";
  for (const auto& s : record.steps) {
    out += std::to_string(s.step);
    for (double x : s.theta) out += "," + format_number(x);
    out += fmt::format(",{},{},{},{},{}\n", format_number(s.objective), format_number(s.cost),
                       format_number(s.first_order_gain), to_string(s.kind), format_number(s.eta_effective));
  }
  return out;
}

}  // namespace cgascent::io
