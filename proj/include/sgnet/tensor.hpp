#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "sgnet/bitmatrix.hpp"
#include "sgnet/error.hpp"

namespace sgnet {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense 64-bit-float tensor of rank 0, 1 or 2 with row-major storage.
// Rank-1 tensors are stored as a single row, rank-0 as a 1x1 cell; the
// logical shape is kept separately so checkpoints and shape checks see the
// declared rank rather than the storage layout.
class Tensor {
 public:
  Tensor() : m_(Matrix::Zero(1, 1)) {}

  static Tensor scalar(double v) {
    Tensor t;
    t.m_(0, 0) = v;
    return t;
  }

  static Tensor zeros(const std::vector<Index>& shape) {
    Tensor t;
    t.shape_ = shape;
    detail::check(shape.size() <= 2, "tensor rank > 2 is not supported");
    const Index r = shape.size() == 2 ? shape[0] : 1;
    const Index c = shape.empty() ? 1 : shape.back();
    detail::check(r >= 0 && c >= 0 && (shape.empty() || (r > 0 && c > 0)),
                  "tensor dimensions must be positive");
    t.m_ = Matrix::Zero(r, c);
    return t;
  }

  static Tensor from_matrix(Matrix m) {
    Tensor t;
    t.shape_ = {m.rows(), m.cols()};
    t.m_ = std::move(m);
    return t;
  }

  static Tensor row(std::vector<double> v) {
    Tensor t;
    t.shape_ = {static_cast<Index>(v.size())};
    t.m_.resize(1, static_cast<Index>(v.size()));
    for (Index i = 0; i < t.m_.cols(); ++i) t.m_(0, i) = v[static_cast<std::size_t>(i)];
    return t;
  }

  Index rank() const { return static_cast<Index>(shape_.size()); }
  const std::vector<Index>& shape() const { return shape_; }
  Index size() const { return m_.size(); }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }

  Matrix& mat() { return m_; }
  const Matrix& mat() const { return m_; }

  double* data() { return m_.data(); }
  const double* data() const { return m_.data(); }

  double scalar_value() const {
    detail::check(rank() == 0, "scalar_value on non-scalar tensor");
    return m_(0, 0);
  }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  bool all_finite() const { return m_.allFinite(); }

  std::string shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(shape_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<Index> shape_;  // empty = rank 0
  Matrix m_;
};

// ---- forward kernels ------------------------------------------------------
// Shared by the autodiff ops and by inference-only paths. `mask == nullptr`
// means full support; masked positions receive exactly zero probability and
// the survivors are renormalized among themselves.

Matrix masked_softmax_kernel(const Matrix& x, const BitMatrix* mask);

double gelu_scalar(double x);
double gelu_grad_scalar(double x);

}  // namespace sgnet
