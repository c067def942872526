#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cgascent {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
Vector scaled(std::span<const double> v, double alpha);
Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);

void require_dim(std::span<const double> v, std::size_t dim);

/// Dense symmetric matrix stored row-major. Construction symmetrizes the
/// input as (A + A^T) / 2, so entry(i, j) == entry(j, i) exactly.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t dim);
  SymmetricMatrix(std::size_t dim, std::vector<double> row_major);
  explicit SymmetricMatrix(const std::vector<std::vector<double>>& rows);

  static SymmetricMatrix identity(std::size_t dim);
  static SymmetricMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  Vector apply(std::span<const double> v) const;
  double frobenius_norm() const;
  std::vector<std::vector<double>> rows() const;

  /// Adds alpha * u u^T in place; keeps exact symmetry.
  void add_outer(double alpha, std::span<const double> u);

  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace cgascent
