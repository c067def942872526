#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cgascent/linalg.hpp"
#include "cgascent/spectral.hpp"

namespace cgascent {

/// Rank-k truncation of the pseudoinverse, keeping the k largest-eigenvalue
/// modes.
///
/// Two error figures are kept. op_error() is 1 / lambda_{k+1}, the weight of
/// the leading dropped mode (0 when nothing is dropped). operator_norm_error()
/// is the exact norm |H^+ - K|_op = max over dropped modes of 1 / lambda_i,
/// which is 1 / lambda_rank. The two agree only when every dropped eigenvalue
/// equals lambda_{k+1}; otherwise op_error() is a strict lower bound.
class RuleKernel {
 public:
  RuleKernel(std::shared_ptr<const SpectralDecomposition> source, std::size_t k);

  std::size_t k() const noexcept { return k_; }
  const SymmetricMatrix& matrix() const noexcept { return kernel_; }
  double op_error() const noexcept { return op_error_; }
  double operator_norm_error() const noexcept { return exact_error_; }
  const SpectralDecomposition& source_spectrum() const noexcept { return *source_; }

  Vector apply(std::span<const double> g) const { return kernel_.apply(g); }

 private:
  std::shared_ptr<const SpectralDecomposition> source_;
  std::size_t k_;
  SymmetricMatrix kernel_;
  double op_error_;
  double exact_error_;
};

struct ModeContribution {
  std::size_t index;  // zero-based mode index
  double value;       // <g, u_i>^2 / lambda_i^2
};

struct ResidualReport {
  /// H^+ g - K g
  Vector residual_vector;
  /// Closed form: sum over dropped modes of <g, u_i>^2 / lambda_i^2.
  double residual_norm_sq = 0.0;
  std::vector<ModeContribution> per_mode_contributions;
};

/// Throws InvalidArgument unless k <= d.rank.
RuleKernel truncate(std::shared_ptr<const SpectralDecomposition> d, std::size_t k);
RuleKernel truncate(const SpectralDecomposition& d, std::size_t k);

struct KernelApplication {
  Vector direction;
  ResidualReport report;
};

KernelApplication apply_with_residual(const RuleKernel& kernel, std::span<const double> g);

/// Smallest k with k = rank or 1 / lambda_{k+1} <= eps. Since 1 / lambda_{k+1}
/// grows with k, the result is 0 when eps >= 1 / lambda_1 and rank otherwise.
std::size_t smallest_k_for_error(const SpectralDecomposition& d, double eps);

}  // namespace cgascent
