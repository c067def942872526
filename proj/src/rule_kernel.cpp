#include "cgascent/rule_kernel.hpp"

#include "cgascent/errors.hpp"

namespace cgascent {

RuleKernel::RuleKernel(std::shared_ptr<const SpectralDecomposition> source, std::size_t k)
    : source_(std::move(source)), k_(k), kernel_(source_ ? source_->dim() : 1), op_error_(0.0), exact_error_(0.0) {
  if (!source_) throw InvalidArgument("rule kernel needs a spectral decomposition");
  if (k_ > source_->rank) {
    throw InvalidArgument("truncation rank " + std::to_string(k_) + " exceeds operator rank " +
                          std::to_string(source_->rank));
  }
  // same accumulation order as pseudoinverse(), so k == rank reproduces it bit for bit
  for (std::size_t i = 0; i < k_; ++i)
    kernel_.add_outer(1.0 / source_->eigenvalues[i], source_->eigenvectors[i]);
  if (k_ < source_->rank) {
    op_error_ = 1.0 / source_->eigenvalues[k_];
    exact_error_ = 1.0 / source_->eigenvalues[source_->rank - 1];
  }
}

RuleKernel truncate(std::shared_ptr<const SpectralDecomposition> d, std::size_t k) {
  return RuleKernel(std::move(d), k);
}

RuleKernel truncate(const SpectralDecomposition& d, std::size_t k) {
  return RuleKernel(std::make_shared<const SpectralDecomposition>(d), k);
}

KernelApplication apply_with_residual(const RuleKernel& kernel, std::span<const double> g) {
  const SpectralDecomposition& s = kernel.source_spectrum();
  require_dim(g, s.dim());

  KernelApplication out;
  out.direction = kernel.apply(g);
  out.report.residual_vector.assign(s.dim(), 0.0);
  for (std::size_t i = kernel.k(); i < s.rank; ++i) {
    const double c = dot(g, s.eigenvectors[i]) / s.eigenvalues[i];
    axpy(c, s.eigenvectors[i], out.report.residual_vector);
    out.report.per_mode_contributions.push_back({i, c * c});
    out.report.residual_norm_sq += c * c;
  }
  return out;
}

std::size_t smallest_k_for_error(const SpectralDecomposition& d, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("error target must be positive");
  for (std::size_t k = 0; k < d.rank; ++k)
    if (1.0 / d.eigenvalues[k] <= eps) return k;
  return d.rank;
}

}  // namespace cgascent
