#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jamwatch/error.hpp"

namespace jamwatch::nn {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Tensor dimensions. Images are rank 3 in (height, width, channels) order.
struct Shape {
  std::vector<Index> dims;

  Shape() = default;
  Shape(std::initializer_list<Index> d) : dims(d) {}
  explicit Shape(std::vector<Index> d) : dims(std::move(d)) {}

  std::size_t rank() const { return dims.size(); }
  Index operator[](std::size_t i) const { return dims[i]; }
  Index numel() const {
    return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  }
  bool is_image() const { return rank() == 3; }

  friend bool operator==(const Shape&, const Shape&) = default;

  /// "49x511x32"
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i) s += 'x';
      s += std::to_string(dims[i]);
    }
    return s;
  }
};

/// Dense row-major tensor. For an image, `data` is laid out so that
/// `channels()` views it as a (height*width) x channels matrix.
template <typename Scalar>
struct Tensor {
  Shape shape;
  Vector<Scalar> data;

  Tensor() = default;
  explicit Tensor(Shape s) : shape(std::move(s)), data(Vector<Scalar>::Zero(shape.numel())) {}
  Tensor(Shape s, Vector<Scalar> d) : shape(std::move(s)), data(std::move(d)) {
    if (data.size() != shape.numel())
      throw ShapeError("tensor data holds " + std::to_string(data.size()) +
                       " values, shape " + shape.str() + " needs " + std::to_string(shape.numel()));
  }

  Index size() const { return data.size(); }

  Eigen::Map<Matrix<Scalar>> channels() {
    return {data.data(), shape[0] * shape[1], shape[2]};
  }
  Eigen::Map<const Matrix<Scalar>> channels() const {
    return {data.data(), shape[0] * shape[1], shape[2]};
  }

  Scalar& at(Index h, Index w, Index c) { return data[(h * shape[1] + w) * shape[2] + c]; }
  Scalar at(Index h, Index w, Index c) const { return data[(h * shape[1] + w) * shape[2] + c]; }

  bool all_finite() const { return data.allFinite(); }

  template <typename Other>
  Tensor<Other> cast() const {
    return Tensor<Other>(shape, data.template cast<Other>());
  }
};

}  // namespace jamwatch::nn
