#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cgascent/cones.hpp"
#include "cgascent/errors.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace cgascent;
using namespace cgascent::testing;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Vector planar(double degrees) { return {std::cos(degrees * kDeg), std::sin(degrees * kDeg), 0.0}; }

CouplingFamily two_cones(double axis_deg, double a1_deg, double a2_deg) {
  return CouplingFamily({CircularCone(planar(0.0), a1_deg * kDeg), CircularCone(planar(axis_deg), a2_deg * kDeg)});
}

// Unit vector at angle `axis_angle` from e_1 in a random plane of R^n.
std::pair<Vector, Vector> axes_at(std::size_t n, double axis_angle, std::mt19937_64& rng) {
  const auto basis = random_orthonormal_basis(n, rng);
  Vector c2 = scaled(basis[0], std::cos(axis_angle));
  axpy(std::sin(axis_angle), basis[1], c2);
  return {basis[0], c2};
}

}  // namespace

TEST_CASE("angle_between") {
  CHECK(angle_between(Vector{1.0, 0.0}, Vector{0.0, 2.0}) == doctest::Approx(std::numbers::pi / 2));
  CHECK(angle_between(Vector{1.0, 0.0}, Vector{-1.0, 0.0}) == doctest::Approx(std::numbers::pi));
  CHECK(angle_between(Vector{1.0, 1e-12}, Vector{1.0, 0.0}) == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("CircularCone validates its inputs") {
  CHECK_THROWS_AS(CircularCone(Vector{0.0, 0.0}, 0.1), InvalidArgument);
  CHECK_THROWS_AS(CircularCone(Vector{1.0, 0.0}, -0.1), InvalidArgument);
  CHECK_THROWS_AS(CircularCone(Vector{1.0, 0.0}, 2.0), InvalidArgument);
  const CircularCone c(Vector{3.0, 4.0}, 0.2);
  CHECK(norm(c.axis()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.contains(Vector{0.0, 0.0}));
  CHECK(c.contains(Vector{6.0, 8.0}));
  CHECK_FALSE(c.contains(Vector{1.0, 0.0}));
  CHECK_THROWS_AS(CouplingFamily({}), InvalidArgument);
  CHECK_THROWS_AS(CouplingFamily({CircularCone(Vector{1.0, 0.0}, 0.1), CircularCone(Vector{1.0, 0.0, 0.0}, 0.1)}),
                  DimensionMismatch);
}

TEST_CASE("coupling rule: identity at zero, nested, convex") {
  std::mt19937_64 rng(1);
  const CouplingFamily f({CircularCone(unit_vector(4, rng), 0.3), CircularCone(unit_vector(4, rng), 1.4)});
  CHECK(f.enlarged_half_angle(0, 0.0) == 0.3);
  CHECK(f.enlarged_half_angle(1, 0.0) == 1.4);
  CHECK(f.enlarged_half_angle(1, 0.5) == kHalfPi);

  for (int trial = 0; trial < 2000; ++trial) {
    const Vector x = unit_vector(4, rng);
    const double g1 = 0.4 * (trial % 5);
    const double g2 = g1 + 0.1;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f.enlarged(i, g1).contains(x)) CHECK(f.enlarged(i, g2).contains(x));
  }
  // midpoints of members stay members
  for (std::size_t i = 0; i < f.size(); ++i) {
    const CircularCone c = f.enlarged(i, 0.2);
    int pairs = 0;
    while (pairs < 200) {
      const Vector a = unit_vector(4, rng);
      const Vector b = unit_vector(4, rng);
      if (!c.contains(a) || !c.contains(b)) continue;
      ++pairs;
      const Vector mid = scaled(add(a, b), 0.5);
      if (norm(mid) > 1e-12) CHECK(c.contains(mid, 1e-12));
    }
  }
}

TEST_CASE("is_feasible: identical cones at gamma 0") {
  const CouplingFamily f({CircularCone(planar(30.0), 0.1), CircularCone(planar(30.0), 0.1)});
  const auto r = is_feasible(f, 0.0);
  REQUIRE(r.feasible);
  CHECK(angle_between(*r.witness, planar(30.0)) <= 0.1 + 1e-9);
}

TEST_CASE("is_feasible: axes 60 degrees apart, half-angles 20") {
  const CouplingFamily f = two_cones(60.0, 20.0, 20.0);
  const auto infeasible = is_feasible(f, 0.0);
  CHECK_FALSE(infeasible.feasible);
  CHECK_FALSE(infeasible.witness.has_value());
  CHECK(infeasible.residual == doctest::Approx(10.0 * kDeg).epsilon(1e-6));
  const auto feasible = is_feasible(f, 15.0 * kDeg);
  REQUIRE(feasible.feasible);
  for (std::size_t i = 0; i < 2; ++i) CHECK(f.enlarged(i, 15.0 * kDeg).contains(*feasible.witness, 1e-9));
  CHECK_THROWS_AS(is_feasible(f, -1.0), InvalidArgument);
  FeasibilityOptions none;
  none.restarts = 0;
  CHECK_THROWS_AS(is_feasible(f, 0.0, none), InvalidArgument);
}

TEST_CASE("is_feasible: feasibility is monotone in gamma") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> half(0.0, 0.6);
  for (int family = 0; family < 100; ++family) {
    const std::size_t n = 2 + family % 4;
    const std::size_t m = 2 + family % 3;
    std::vector<CircularCone> cones;
    for (std::size_t i = 0; i < m; ++i) cones.emplace_back(unit_vector(n, rng), half(rng));
    const CouplingFamily f(std::move(cones));
    bool seen_feasible = false;
    for (double gamma = 0.0; gamma <= kHalfPi; gamma += kHalfPi / 8) {
      const bool feasible = is_feasible(f, gamma).feasible;
      if (seen_feasible) CHECK(feasible);
      seen_feasible = seen_feasible || feasible;
    }
  }
}

TEST_CASE("find_gamma_star: worked examples") {
  SUBCASE("identical cones") {
    const CouplingFamily f({CircularCone(planar(10.0), 0.2), CircularCone(planar(10.0), 0.2)});
    const auto r = find_gamma_star(f, 1e-4);
    CHECK(r.gamma_star == 0.0);
    CHECK(r.tolerance == 0.0);
  }
  SUBCASE("axes 60 degrees apart") {
    const auto r = find_gamma_star(two_cones(60.0, 20.0, 20.0), 1e-4);
    CHECK(std::abs(r.gamma_star - std::numbers::pi / 18) <= 1e-4);
    CHECK(r.upper - r.lower <= 1e-4);
    CHECK(r.lower_certified_infeasible);
    CHECK_FALSE(is_feasible(two_cones(60.0, 20.0, 20.0), r.lower).feasible);
  }
  SUBCASE("antipodal rays open up to half-spaces") {
    const auto r = find_gamma_star(two_cones(180.0, 0.0, 0.0), 1e-4);
    CHECK(std::abs(r.gamma_star - kHalfPi) <= 1e-4);
    CHECK(std::abs(dot(r.witness, planar(0.0))) <= 1e-8);
  }
  SUBCASE("three half-planes in 2D meet only at the origin") {
    const CouplingFamily f({CircularCone(Vector{1.0, 0.0}, 0.0),
                            CircularCone(Vector{std::cos(2.0 * std::numbers::pi / 3), std::sin(2.0 * std::numbers::pi / 3)}, 0.0),
                            CircularCone(Vector{std::cos(4.0 * std::numbers::pi / 3), std::sin(4.0 * std::numbers::pi / 3)}, 0.0)});
    CHECK_THROWS_AS(find_gamma_star(f, 1e-4), InfeasibleAtMax);
  }
  CHECK_THROWS_AS(find_gamma_star(two_cones(60.0, 20.0, 20.0), 0.0), InvalidArgument);
}

TEST_CASE("find_gamma_star: random two-cone families match the analytic threshold") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> half(0.0, std::numbers::pi / 4);
  int tested = 0;
  while (tested < 20) {
    const std::size_t n = 2 + tested % 4;
    const double theta = angle(rng);
    const double a1 = half(rng), a2 = half(rng);
    const double expected = two_cone_gamma_star(theta, a1, a2);
    if (std::max(a1, a2) + expected > kHalfPi) continue;
    ++tested;
    const auto [c1, c2] = axes_at(n, theta, rng);
    const CouplingFamily f({CircularCone(c1, a1), CircularCone(c2, a2)});
    const auto r = find_gamma_star(f, 1e-4);
    CHECK(std::abs(r.gamma_star - expected) <= 1e-4 + 1e-6);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(angle_between(r.witness, f.base_cones()[i].axis()) <= f.enlarged_half_angle(i, r.upper) + 1e-9);
  }
}

TEST_CASE("phi: spherical cap fractions") {
  const CouplingFamily hemisphere({CircularCone(Vector{0.0, 0.0, 1.0}, kHalfPi)});
  for (double gamma : {0.0, 0.3}) {
    const auto p = phi(hemisphere, gamma, 100000, 17);
    CHECK(std::abs(p.estimate - 0.5) <= 3.0 * p.std_error);
  }
  const CouplingFamily clamped({CircularCone(Vector{1.0, 1.0, 0.0}, 1.2), CircularCone(Vector{1.0, 1.0, 0.0}, 0.4)});
  const auto p = phi(clamped, kHalfPi, 100000, 18);
  CHECK(std::abs(p.estimate - 0.5) <= 3.0 * p.std_error);

  const auto empty = phi(two_cones(60.0, 20.0, 20.0), 5.0 * kDeg, 100000, 19);
  CHECK(empty.estimate == 0.0);
  CHECK(empty.std_error == 0.0);

  const auto again = phi(hemisphere, 0.0, 1000, 17);
  CHECK(again.estimate == phi(hemisphere, 0.0, 1000, 17).estimate);
  CHECK_THROWS_AS(phi(hemisphere, 0.0, 0, 1), InvalidArgument);
}

TEST_CASE("phi_curve: common random numbers make the curve monotone") {
  const CouplingFamily same({CircularCone(Vector{0.0, 1.0, 0.0}, std::numbers::pi / 4),
                             CircularCone(Vector{0.0, 1.0, 0.0}, std::numbers::pi / 4)});
  const std::vector<double> grid{0.0, std::numbers::pi / 8, std::numbers::pi / 4};
  const auto curve = phi_curve(same, grid, 100000, 5);
  REQUIRE(curve.size() == 3);
  CHECK(std::abs(curve[0].estimate - cap_fraction_3d(std::numbers::pi / 4)) <= 3.0 * curve[0].std_error);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].estimate >= curve[i - 1].estimate);

  const auto separated = phi_curve(two_cones(60.0, 20.0, 20.0), grid, 20000, 6);
  CHECK(separated[0].estimate == 0.0);

  CHECK_THROWS_AS(phi_curve(same, std::vector<double>{}, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(phi_curve(same, std::vector<double>{0.2, 0.1}, 10, 1), InvalidArgument);
}
