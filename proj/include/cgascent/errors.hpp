#pragma once

#include <stdexcept>
#include <string>

namespace cgascent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The Jacobi iteration did not drive the off-diagonal mass to zero.
class NotConverged : public Error {
 public:
  NotConverged(int sweeps, double off_diagonal_residual)
      : Error("Jacobi iteration did not converge after " + std::to_string(sweeps) +
              " sweeps (off-diagonal residual " + std::to_string(off_diagonal_residual) + ")"),
        sweeps_(sweeps),
        residual_(off_diagonal_residual) {}

  int sweeps() const noexcept { return sweeps_; }
  double off_diagonal_residual() const noexcept { return residual_; }

 private:
  int sweeps_;
  double residual_;
};

class NotPositiveSemidefinite : public Error {
 public:
  explicit NotPositiveSemidefinite(double smallest_eigenvalue)
      : Error("matrix is not positive semidefinite (smallest eigenvalue " +
              std::to_string(smallest_eigenvalue) + ")"),
        smallest_(smallest_eigenvalue) {}

  double smallest_eigenvalue() const noexcept { return smallest_; }

 private:
  double smallest_;
};

/// A direction whose effort is numerically zero cannot be normalized.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

class InadmissibleDirection : public Error {
 public:
  using Error::Error;
};

class InfeasibleStart : public Error {
 public:
  InfeasibleStart(double cost, double kappa)
      : Error("start point violates the budget: C = " + std::to_string(cost) + " > kappa = " +
              std::to_string(kappa)) {}
};

/// Even fully opened cones (half-angle pi/2) share no unit direction.
class InfeasibleAtMax : public Error {
 public:
  explicit InfeasibleAtMax(double residual)
      : Error("cone family is infeasible at maximal coupling (residual " +
              std::to_string(residual) + " rad)"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cgascent
