#include "cgascent/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cgascent/errors.hpp"

namespace cgascent {
namespace {

Vector normalized(std::span<const double> v) {
  const double n = norm(v);
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return scaled(v, 1.0 / n);
}

Vector random_unit(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(dim);
  for (;;) {
    for (double& v : x) v = normal(rng);
    const double n = norm(x);
    if (n > 1e-300) {
      for (double& v : x) v /= n;
      return x;
    }
  }
}

// Unit tangent at unit x pointing away from unit c: the Riemannian gradient
// of angle(., c). For x = +-c any perpendicular direction is a subgradient.
Vector angle_gradient(std::span<const double> x, std::span<const double> c) {
  const double cx = dot(c, x);
  Vector t(c.begin(), c.end());
  axpy(-cx, x, t);
  double tn = norm(t);
  if (tn < 1e-300) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (std::abs(x[i]) < std::abs(x[k])) k = i;
    t.assign(x.size(), 0.0);
    t[k] = 1.0;
    axpy(-x[k], x, t);
    tn = norm(t);
    return scaled(t, 1.0 / tn);
  }
  return scaled(t, -1.0 / tn);
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  Vector x;
};

class SubgradientRun {
 public:
  SubgradientRun(const CouplingFamily& family, double gamma) : family_(family), gamma_(gamma) {}

  // Runs `iterations` steps from x with step(t) and returns the best point.
  template <typename StepRule>
  Candidate run(Vector x, int iterations, StepRule step) const {
    Candidate best{family_.violation(x, gamma_), x};
    for (int t = 1; t <= iterations && best.value > 0.0; ++t) {
      std::size_t worst = 0;
      double worst_value = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < family_.size(); ++i) {
        const double v = angle_between(x, family_.base_cones()[i].axis()) -
                         family_.enlarged_half_angle(i, gamma_);
        if (v > worst_value) {
          worst_value = v;
          worst = i;
        }
      }
      const Vector g = angle_gradient(x, family_.base_cones()[worst].axis());
      const double s = step(t);
      // geodesic step along -g
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::cos(s) * x[k] - std::sin(s) * g[k];
      x = normalized(x);
      const double v = family_.violation(x, gamma_);
      if (v < best.value) best = {v, x};
    }
    return best;
  }

 private:
  const CouplingFamily& family_;
  double gamma_;
};

}  // namespace

double angle_between(std::span<const double> x, std::span<const double> y) {
  const Vector xu = normalized(x);
  const Vector yu = normalized(y);
  const double c = dot(xu, yu);
  Vector perp = xu;
  axpy(-c, yu, perp);
  return std::atan2(norm(perp), c);
}

CircularCone::CircularCone(Vector axis, double half_angle)
    : axis_(normalized(axis)), half_angle_(half_angle) {
  if (!(half_angle >= 0.0 && half_angle <= kHalfPi))
    throw InvalidArgument("cone half-angle must lie in [0, pi/2]");
}

bool CircularCone::contains(std::span<const double> x, double angular_tol) const {
  require_dim(x, dim());
  if (norm(x) == 0.0) return true;
  return angle_between(x, axis_) <= half_angle_ + angular_tol;
}

CouplingFamily::CouplingFamily(std::vector<CircularCone> base_cones) : cones_(std::move(base_cones)) {
  if (cones_.empty()) throw InvalidArgument("a coupling family needs at least one cone");
  const std::size_t dim = cones_.front().dim();
  if (dim < 2) throw InvalidArgument("cones must live in dimension 2 or higher");
  for (const auto& c : cones_)
    if (c.dim() != dim) throw DimensionMismatch(dim, c.dim());
}

double CouplingFamily::enlarged_half_angle(std::size_t i, double gamma) const {
  return std::min(cones_.at(i).half_angle() + gamma, kHalfPi);
}

CircularCone CouplingFamily::enlarged(std::size_t i, double gamma) const {
  return CircularCone(cones_.at(i).axis(), enlarged_half_angle(i, gamma));
}

double CouplingFamily::violation(std::span<const double> x, double gamma) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cones_.size(); ++i)
    worst = std::max(worst, angle_between(x, cones_[i].axis()) - enlarged_half_angle(i, gamma));
  return worst;
}

FeasibilityResult is_feasible(const CouplingFamily& family, double gamma,
                              const FeasibilityOptions& options) {
  if (!(gamma >= 0.0)) throw InvalidArgument("coupling level must be nonnegative");
  if (options.restarts < 1) throw InvalidArgument("at least one restart is required");

  const std::size_t dim = family.dim();
  std::vector<Vector> starts;
  for (const auto& c : family.base_cones()) starts.push_back(c.axis());
  Vector mean(dim, 0.0);
  for (const auto& c : family.base_cones()) axpy(1.0, c.axis(), mean);
  if (norm(mean) > 1e-12) starts.push_back(normalized(mean));
  if (starts.size() > static_cast<std::size_t>(options.restarts))
    starts.resize(static_cast<std::size_t>(options.restarts));
  std::mt19937_64 rng(options.seed);
  while (starts.size() < static_cast<std::size_t>(options.restarts))
    starts.push_back(random_unit(dim, rng));

  const SubgradientRun runner(family, gamma);
  const auto diminishing = [&](int t) { return options.initial_step / std::sqrt(double(t)); };

  std::vector<Candidate> ends;
  ends.reserve(starts.size());
  for (auto& x0 : starts) {
    ends.push_back(runner.run(std::move(x0), options.iterations, diminishing));
    if (ends.back().value <= 0.0) break;
  }
  std::stable_sort(ends.begin(), ends.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  Candidate best = ends.front();

  if (best.value > 0.0 && options.refine_iterations > 0) {
    const double ratio = std::pow(options.refine_final_step / options.refine_initial_step,
                                  1.0 / std::max(1, options.refine_iterations - 1));
    const auto geometric = [&](int t) { return options.refine_initial_step * std::pow(ratio, t - 1); };
    const std::size_t n = std::min(ends.size(), static_cast<std::size_t>(std::max(0, options.refine_starts)));
    for (std::size_t i = 0; i < n && best.value > 0.0; ++i) {
      Candidate c = runner.run(ends[i].x, options.refine_iterations, geometric);
      if (c.value < best.value) best = std::move(c);
    }
  }

  FeasibilityResult result;
  result.residual = best.value;
  result.feasible = best.value <= options.feasibility_tol;
  if (result.feasible) result.witness = std::move(best.x);
  return result;
}

ThresholdResult find_gamma_star(const CouplingFamily& family, double tol,
                                const FeasibilityOptions& options) {
  if (!(tol > 0.0)) throw InvalidArgument("bisection tolerance must be positive");

  ThresholdResult out;
  FeasibilityResult at_zero = is_feasible(family, 0.0, options);
  if (at_zero.feasible) {
    out.witness = std::move(*at_zero.witness);
    return out;
  }
  FeasibilityResult at_max = is_feasible(family, kHalfPi, options);
  if (!at_max.feasible) throw InfeasibleAtMax(at_max.residual);

  double lo = 0.0;
  double hi = kHalfPi;
  Vector witness = std::move(*at_max.witness);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityResult r = is_feasible(family, mid, options);
    if (r.feasible) {
      hi = mid;
      witness = std::move(*r.witness);
    } else {
      lo = mid;
    }
  }
  out.lower = lo;
  out.upper = hi;
  out.lower_certified_infeasible = true;
  out.gamma_star = 0.5 * (lo + hi);
  out.witness = std::move(witness);
  out.tolerance = hi - lo;
  return out;
}

namespace {

// angles[s * m + i] = angle(sample s, axis i)
std::vector<double> sample_angles(const CouplingFamily& family, std::size_t samples,
                                  std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("at least one sample is required");
  std::mt19937_64 rng(seed);
  const std::size_t m = family.size();
  std::vector<double> angles(samples * m);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = random_unit(family.dim(), rng);
    for (std::size_t i = 0; i < m; ++i) angles[s * m + i] = angle_between(x, family.base_cones()[i].axis());
  }
  return angles;
}

PhiEstimate estimate_from(const CouplingFamily& family, const std::vector<double>& angles,
                          std::size_t samples, double gamma) {
  const std::size_t m = family.size();
  std::vector<double> limit(m);
  for (std::size_t i = 0; i < m; ++i) limit[i] = family.enlarged_half_angle(i, gamma);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i) inside = angles[s * m + i] <= limit[i];
    hits += inside ? 1 : 0;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {gamma, p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace

PhiEstimate phi(const CouplingFamily& family, double gamma, std::size_t samples, std::uint64_t seed) {
  if (!(gamma >= 0.0)) throw InvalidArgument("coupling level must be nonnegative");
  return estimate_from(family, sample_angles(family, samples, seed), samples, gamma);
}

std::vector<PhiEstimate> phi_curve(const CouplingFamily& family, std::span<const double> gammas,
                                   std::size_t samples, std::uint64_t seed) {
  if (gammas.empty()) throw InvalidArgument("gamma grid is empty");
  if (!(gammas.front() >= 0.0)) throw InvalidArgument("coupling level must be nonnegative");
  for (std::size_t i = 1; i < gammas.size(); ++i)
    if (!(gammas[i] > gammas[i - 1])) throw InvalidArgument("gamma grid must be strictly ascending");
  const std::vector<double> angles = sample_angles(family, samples, seed);
  std::vector<PhiEstimate> out;
  out.reserve(gammas.size());
  for (double g : gammas) out.push_back(estimate_from(family, angles, samples, g));
  return out;
}

}  // namespace cgascent
