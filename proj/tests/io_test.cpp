#include <doctest.h>

#include <numbers>

#include "cgascent/errors.hpp"
#include "cgascent/io.hpp"

using namespace cgascent;
using cgascent::io::json;

TEST_CASE("matrix JSON") {
  const auto m = io::matrix_from_json(json::parse(R"({"dim": 2, "entries": [[4, 1], [1, 3]]})"));
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 1) == 3.0);
  CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"dim": 3, "entries": [[4, 1], [1, 3]]})")), DimensionMismatch);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"dim": 2})")), InvalidArgument);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"entries": [[1, "x"], [0, 1]]})")), InvalidArgument);
}

TEST_CASE("cone list JSON uses degrees") {
  const auto f = io::cones_from_json(json::parse(R"([{"axis": [2, 0], "half_angle_deg": 30},
                                                     {"axis": [0, 1], "half_angle_deg": 90}])"));
  REQUIRE(f.size() == 2);
  CHECK(f.base_cones()[0].axis() == Vector{1.0, 0.0});
  CHECK(f.base_cones()[0].half_angle() == doctest::Approx(std::numbers::pi / 6));
  CHECK(f.base_cones()[1].half_angle() == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(io::cones_from_json(json::parse(R"({"axis": [1, 0]})")), InvalidArgument);
}

TEST_CASE("optimize config") {
  const auto config = io::optimize_config_from_json(json::parse(R"({
    "objective": {"kind": "quadratic", "A": {"dim": 2, "entries": [[1, 0], [0, 2]]}, "b": [1, 1]},
    "operator_field": {"kind": "diag_decay", "dim": 2, "a": 1.0, "rho": 0.5},
    "budget": {"kind": "sphere", "kappa": 4.0},
    "theta0": [0, 0],
    "steps": 25,
    "eta": 0.1,
    "agent": "a1"
  })"));
  CHECK(config.options.steps == 25);
  CHECK(config.options.scaling == StepScaling::GainScaled);
  REQUIRE(config.budget.has_value());
  CHECK(config.budget->cost(Vector{1.0, 1.0}) == 2.0);
  CHECK(config.field(Vector{0.0, 0.0}).spectrum().eigenvalues == std::vector<double>{1.0, 0.5});
  CHECK_FALSE(config.out.has_value());
  CHECK(config.agent == "a1");

  const auto unconstrained = io::optimize_config_from_json(json::parse(R"({
    "objective": {"kind": "rosenbrock"}, "operator_field": {"kind": "mask", "mask": [1, 1]},
    "budget": null, "theta0": [0, 0], "steps": 1, "eta": 0.1, "step_scaling": "unit_effort", "out": "t.csv"})"));
  CHECK_FALSE(unconstrained.budget.has_value());
  CHECK(unconstrained.options.scaling == StepScaling::UnitEffort);
  CHECK(*unconstrained.out == "t.csv");

  CHECK_THROWS_AS(io::objective_from_json(json::parse(R"({"kind": "cubic"})")), InvalidArgument);
  CHECK_THROWS_AS(io::operator_field_from_json(json::parse(R"({"kind": "spiral"})")), InvalidArgument);
  CHECK_THROWS_AS(io::budget_from_json(json::parse(R"({"kind": "sphere", "kappa": 1, "center": [0]})"), 2),
                  DimensionMismatch);
}

TEST_CASE("trace CSV layout") {
  TrajectoryRecord rec;
  TrajectoryStep s;
  s.theta = {0.5, -1.0};
  s.objective = 2.0;
  s.kind = DirectionKind::Optimal;
  s.first_order_gain = 0.25;
  s.eta_effective = 0.1;
  rec.steps.push_back(s);
  CHECK(io::trace_csv(rec) == "step,theta_0,theta_1,J,C,gain,kind,eta_eff\n0,0.5,-1,2,0,0.25,Optimal,0.10000000000000001\n");
}

TEST_CASE("direction JSON") {
  DirectionResult d;
  const auto j = io::direction_to_json(d);
  CHECK(j["kind"] == "Degenerate");
  CHECK(j["direction"].is_null());
  CHECK(j["gain"] == 0.0);
}
