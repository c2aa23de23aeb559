#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "jamwatch/nn/tensor.hpp"

namespace jamwatch::nn {

/// Predictions are clipped to [kBceClip, 1 - kBceClip] before the log.
inline constexpr double kBceClip = 1e-7;

/// Squared Frobenius norm of X - Y, accumulated in double.
template <typename Scalar>
double mse(const Tensor<Scalar>& x, const Tensor<Scalar>& y) {
  if (x.shape != y.shape) throw ShapeError("mse: shapes " + x.shape.str() + " and " + y.shape.str() + " differ");
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x.data[i]) - static_cast<double>(y.data[i]);
    acc += d * d;
  }
  return acc;
}

/// d mse(target, output) / d output = 2 (output - target).
template <typename Scalar>
Tensor<Scalar> mse_grad(const Tensor<Scalar>& target, const Tensor<Scalar>& output, Scalar scale = Scalar(1)) {
  if (target.shape != output.shape)
    throw ShapeError("mse: shapes " + target.shape.str() + " and " + output.shape.str() + " differ");
  return Tensor<Scalar>(output.shape, (Scalar(2) * scale) * (output.data - target.data));
}

inline double clip_probability(double p) { return std::clamp(p, kBceClip, 1.0 - kBceClip); }

/// Mean binary cross-entropy over N = labels.size() samples.
inline double bce(std::span<const double> labels, std::span<const double> predictions) {
  if (labels.empty()) throw ArgumentError("bce: N must be > 0");
  if (labels.size() != predictions.size()) throw ArgumentError("bce: labels and predictions differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = clip_probability(predictions[i]);
    acc += labels[i] * std::log(p) + (1.0 - labels[i]) * std::log(1.0 - p);
  }
  return -acc / static_cast<double>(labels.size());
}

/// Derivative of one sample's term of bce() w.r.t. its prediction, for a
/// batch of size n.
inline double bce_grad(double label, double prediction, std::size_t n) {
  const double p = clip_probability(prediction);
  return -(label / p - (1.0 - label) / (1.0 - p)) / static_cast<double>(n);
}

/// Derivative of one sample's term of bce() w.r.t. the logit z of a sigmoid
/// output p = sigmoid(z): (p - label) / n. Stays informative when the float
/// sigmoid has saturated, where the chain through bce_grad() vanishes.
inline double bce_logit_grad(double label, double prediction, std::size_t n) {
  return (prediction - label) / static_cast<double>(n);
}

}  // namespace jamwatch::nn
