#include "cgascent/linalg.hpp"

#include <cmath>

#include "cgascent/errors.hpp"

namespace cgascent {

double dot(std::span<const double> a, std::span<const double> b) {
  require_dim(b, a.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) {
  // scaled accumulation avoids overflow for large entries
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double ax = std::abs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_dim(y, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector scaled(std::span<const double> v, double alpha) {
  Vector out(v.begin(), v.end());
  for (double& x : out) x *= alpha;
  return out;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  require_dim(b, a.size());
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_dim(b, a.size());
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

void require_dim(std::span<const double> v, std::size_t dim) {
  if (v.size() != dim) throw DimensionMismatch(dim, v.size());
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be at least 1");
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be at least 1");
  if (data_.size() != dim * dim) throw DimensionMismatch(dim * dim, data_.size());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double avg = 0.5 * (data_[i * dim + j] + data_[j * dim + i]);
      data_[i * dim + j] = avg;
      data_[j * dim + i] = avg;
    }
  }
}

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw InvalidArgument("matrix must be square: row of length " + std::to_string(row.size()) +
                            " in a " + std::to_string(rows.size()) + "-row matrix");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(const std::vector<std::vector<double>>& rows)
    : SymmetricMatrix(rows.size(), flatten(rows)) {}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
  SymmetricMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.data_[i * dim + i] = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> diag) {
  SymmetricMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * diag.size() + i] = diag[i];
  return m;
}

Vector SymmetricMatrix::apply(std::span<const double> v) const {
  require_dim(v, dim_);
  Vector out(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += data_[i * dim_ + j] * v[j];
    out[i] = s;
  }
  return out;
}

double SymmetricMatrix::frobenius_norm() const { return norm(data_); }

std::vector<std::vector<double>> SymmetricMatrix::rows() const {
  std::vector<std::vector<double>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
  }
  return out;
}

void SymmetricMatrix::add_outer(double alpha, std::span<const double> u) {
  require_dim(u, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    data_[i * dim_ + i] += alpha * u[i] * u[i];
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double v = alpha * u[i] * u[j];
      data_[i * dim_ + j] += v;
      data_[j * dim_ + i] += v;
    }
  }
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch(a.dim_, b.dim_);
  SymmetricMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch(a.dim_, b.dim_);
  SymmetricMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

}  // namespace cgascent
