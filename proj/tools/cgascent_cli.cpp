#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cgascent/ascent.hpp"
#include "cgascent/cones.hpp"
#include "cgascent/direction.hpp"
#include "cgascent/errors.hpp"
#include "cgascent/io.hpp"
#include "cgascent/rule_kernel.hpp"

namespace {

using namespace cgascent;
using io::json;

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

int run_direction(const std::string& op_path, const std::string& grad_path) {
  const ConstraintOperator h(io::matrix_from_json(io::read_json(op_path)));
  const Vector g = io::vector_from_json(io::read_json(grad_path));
  print(io::direction_to_json(optimal_direction(h, g)));
  return 0;
}

int run_compress(const std::string& op_path, const std::string& grad_path, std::optional<std::size_t> k,
                 std::optional<double> eps, const std::string& sweep_path) {
  const ConstraintOperator h(io::matrix_from_json(io::read_json(op_path)));
  const Vector g = io::vector_from_json(io::read_json(grad_path));
  auto spectrum = std::make_shared<const SpectralDecomposition>(h.spectrum());

  const std::size_t chosen = k ? *k : smallest_k_for_error(*spectrum, *eps);
  const RuleKernel kernel = truncate(spectrum, chosen);
  const KernelApplication applied = apply_with_residual(kernel, g);
  print(io::compress_to_json(kernel, applied.report));

  if (!sweep_path.empty()) {
    std::string csv = "k,op_error,residual_norm_sq\n";
    for (std::size_t j = 0; j <= spectrum->rank; ++j) {
      const RuleKernel kj = truncate(spectrum, j);
      const double r = apply_with_residual(kj, g).report.residual_norm_sq;
      csv += fmt::format("{},{},{}\n", j, io::format_number(kj.op_error()), io::format_number(r));
    }
    write_file(sweep_path, csv);
  }
  return 0;
}

int run_threshold(const std::string& cones_path, double tol, const FeasibilityOptions& options) {
  const CouplingFamily family = io::cones_from_json(io::read_json(cones_path));
  print(io::threshold_to_json(find_gamma_star(family, tol, options)));
  return 0;
}

int run_phi_curve(const std::string& cones_path, double gamma_max, std::size_t steps, std::size_t samples,
                  std::uint64_t seed) {
  const CouplingFamily family = io::cones_from_json(io::read_json(cones_path));
  if (!(gamma_max > 0.0)) throw InvalidArgument("--gamma-max must be positive");
  if (steps < 1) throw InvalidArgument("--steps must be at least 1");
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = gamma_max * static_cast<double>(i) / static_cast<double>(steps);
  std::cout << "gamma,phi,stderr\n";
  for (const auto& p : phi_curve(family, grid, samples, seed)) {
    std::cout << io::format_number(p.gamma) << ',' << io::format_number(p.estimate) << ','
              << io::format_number(p.std_error) << '\n';
  }
  return 0;
}

int run_optimize(const std::string& config_path) {
  const io::OptimizeConfig config = io::optimize_config_from_json(io::read_json(config_path));
  TrajectoryRecord record = run_ascent(config.objective, config.field, config.budget, config.theta0, config.options);
  record.agent = config.agent;
  const std::string csv = io::trace_csv(record);
  const TrajectoryStep& last = record.last();
  const ConstraintOperator h = config.field(last.theta);
  const Vector g = config.objective.gradient(last.theta);

  json summary = {{"status", to_string(record.status)},
                  {"steps", last.step},
                  {"theta", last.theta},
                  {"J", last.objective},
                  {"C", last.cost},
                  {"gradient_norm", norm(g)},
                  {"projected_gradient_norm", projected_gradient_norm(h, g, config.budget, last.theta)}};
  if (!record.agent.empty()) summary["agent"] = record.agent;
  if (config.out) {
    write_file(*config.out, csv);
    summary["trace"] = *config.out;
    print(summary);
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained first-order ascent directions, rule kernels and cone thresholds"};
  app.require_subcommand(1);

  std::string op_path, grad_path, cones_path, config_path, sweep_path;

  auto* direction = app.add_subcommand("direction", "Optimal unit-effort direction for a gradient");
  direction->add_option("--operator", op_path, "Operator matrix JSON")->required()->check(CLI::ExistingFile);
  direction->add_option("--gradient", grad_path, "Gradient JSON array")->required()->check(CLI::ExistingFile);

  std::optional<std::size_t> k;
  std::optional<double> eps;
  auto* compress = app.add_subcommand("compress", "Rank-k rule kernel with its error certificate");
  compress->add_option("--operator", op_path, "Operator matrix JSON")->required()->check(CLI::ExistingFile);
  compress->add_option("--gradient", grad_path, "Gradient JSON array")->required()->check(CLI::ExistingFile);
  auto* k_opt = compress->add_option("--k", k, "Truncation rank");
  auto* eps_opt = compress->add_option("--eps", eps, "Operator-norm error target")->check(CLI::PositiveNumber);
  k_opt->excludes(eps_opt);
  compress->add_option("--sweep", sweep_path, "Write an error-vs-k CSV to this path");

  double tol = 1e-4;
  FeasibilityOptions feas;
  auto* threshold = app.add_subcommand("threshold", "Bisection for the compatibility threshold gamma*");
  threshold->add_option("--cones", cones_path, "Cone list JSON")->required()->check(CLI::ExistingFile);
  threshold->add_option("--tol", tol, "Bracket width in radians")->check(CLI::PositiveNumber);
  threshold->add_option("--restarts", feas.restarts, "Feasibility restarts")->check(CLI::PositiveNumber);
  threshold->add_option("--seed", feas.seed, "Feasibility seed");

  double gamma_max = kHalfPi;
  std::size_t steps = 16, samples = 100000;
  std::uint64_t seed = 1;
  auto* curve = app.add_subcommand("phi-curve", "Monte-Carlo compatibility curve as CSV");
  curve->add_option("--cones", cones_path, "Cone list JSON")->required()->check(CLI::ExistingFile);
  curve->add_option("--gamma-max", gamma_max, "Largest coupling level in radians");
  curve->add_option("--steps", steps, "Number of grid intervals");
  curve->add_option("--samples", samples, "Sphere samples")->check(CLI::PositiveNumber);
  curve->add_option("--seed", seed, "Sampling seed");

  auto* optimize = app.add_subcommand("optimize", "Run constrained ascent from a JSON config");
  optimize->add_option("--config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*direction) return run_direction(op_path, grad_path);
    if (*compress) {
      if (!k && !eps) throw InvalidArgument("compress needs --k or --eps");
      return run_compress(op_path, grad_path, k, eps, sweep_path);
    }
    if (*threshold) return run_threshold(cones_path, tol, feas);
    if (*curve) return run_phi_curve(cones_path, gamma_max, steps, samples, seed);
    if (*optimize) return run_optimize(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
