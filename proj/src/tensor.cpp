#include "sgnet/tensor.hpp"

#include <cmath>
#include <limits>

namespace sgnet {

Matrix masked_softmax_kernel(const Matrix& x, const BitMatrix* mask) {
  if (mask != nullptr) {
    detail::check(mask->rows == x.rows() && mask->cols == x.cols(),
                  "mask shape does not match scores");
  }
  Matrix y = Matrix::Zero(x.rows(), x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < x.cols(); ++j) {
      if (mask != nullptr && !(*mask)(i, j)) continue;
      row_max = std::max(row_max, x(i, j));
    }
    detail::check(row_max > -std::numeric_limits<double>::infinity(),
                  "softmax row " + std::to_string(i) + " has empty support");
    double sum = 0.0;
    for (Index j = 0; j < x.cols(); ++j) {
      if (mask != nullptr && !(*mask)(i, j)) continue;
      const double e = std::exp(x(i, j) - row_max);
      y(i, j) = e;
      sum += e;
    }
    for (Index j = 0; j < x.cols(); ++j) {
      if (mask != nullptr && !(*mask)(i, j)) continue;
      y(i, j) /= sum;
    }
  }
  return y;
}

double gelu_scalar(double x) {
  // Exact Gaussian-CDF form x * Phi(x).
  return x * 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
}

double gelu_grad_scalar(double x) {
  const double phi_cdf = 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
  const double phi_pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return phi_cdf + x * phi_pdf;
}

}  // namespace sgnet
