#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cgascent/linalg.hpp"

namespace cgascent {

/// Eigendecomposition of a symmetric positive-semidefinite matrix.
///
/// All `dim` eigenpairs are kept, sorted by nonincreasing eigenvalue. The
/// first `rank` pairs span the image; the remaining eigenvectors span the
/// kernel. Each eigenvector's first nonzero component is positive.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Vector> eigenvectors;
  std::size_t rank = 0;
  /// Absolute threshold actually used to count the rank.
  double rank_tolerance = 0.0;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  double largest() const noexcept { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Relative factor for the default rank threshold (times lambda_max).
  double relative_rank_tolerance = 1e-10;
  /// Eigenvalues in [-psd_slack * max(1, |lambda|_max), 0) are clamped to 0.
  double psd_slack = 1e-10;
};

/// Cyclic Jacobi eigendecomposition of a PSD matrix.
///
/// When `rank_tolerance` is empty the threshold is relative_rank_tolerance *
/// lambda_max. Throws NotConverged if the off-diagonal mass survives
/// `max_sweeps` sweeps and NotPositiveSemidefinite for eigenvalues below the
/// clamp window.
SpectralDecomposition decompose(const SymmetricMatrix& a,
                                std::optional<double> rank_tolerance = std::nullopt,
                                const JacobiOptions& options = {});

/// Moore-Penrose pseudoinverse: sum over the first `rank` pairs of u u^T / lambda.
SymmetricMatrix pseudoinverse(const SpectralDecomposition& d);

/// Orthogonal projection onto the span of the first `rank` eigenvectors.
Vector project_onto_image(const SpectralDecomposition& d, std::span<const double> v);

/// Rebuilds sum lambda_i u_i u_i^T over all pairs.
SymmetricMatrix reconstruct(const SpectralDecomposition& d);

}  // namespace cgascent
