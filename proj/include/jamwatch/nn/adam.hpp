#pragma once

#include <cmath>
#include <cstdint>

#include "jamwatch/nn/network.hpp"

namespace jamwatch::nn {

template <typename Scalar>
struct AdamState {
  std::vector<LayerParams<Scalar>> first;
  std::vector<LayerParams<Scalar>> second;
  std::int64_t step = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

template <typename Scalar>
AdamState<Scalar> make_adam(const Network<Scalar>& net, double lr = 1e-3) {
  AdamState<Scalar> s;
  s.first = zero_gradients(net);
  s.second = zero_gradients(net);
  s.lr = lr;
  return s;
}

namespace detail {

template <typename Dst, typename Src>
void adam_update(Dst& param, const Src& grad, Dst& m, Dst& v, const AdamState<typename Dst::Scalar>& s,
                 double c1, double c2) {
  using Scalar = typename Dst::Scalar;
  if (grad.rows() != param.rows() || grad.cols() != param.cols() || m.rows() != param.rows() ||
      m.cols() != param.cols())
    throw ShapeError("adam: gradient/moment shape does not match parameter");
  for (Index i = 0; i < param.size(); ++i) {
    const double g = static_cast<double>(grad.data()[i]);
    const double mi = s.beta1 * static_cast<double>(m.data()[i]) + (1.0 - s.beta1) * g;
    const double vi = s.beta2 * static_cast<double>(v.data()[i]) + (1.0 - s.beta2) * g * g;
    m.data()[i] = static_cast<Scalar>(mi);
    v.data()[i] = static_cast<Scalar>(vi);
    const double step = s.lr * (mi / c1) / (std::sqrt(vi / c2) + s.epsilon);
    param.data()[i] = static_cast<Scalar>(static_cast<double>(param.data()[i]) - step);
  }
}

}  // namespace detail

/// One bias-corrected Adam update. Throws TrainingError if any gradient is
/// non-finite (parameters are left untouched in that case).
template <typename Scalar>
void adam_step(std::vector<LayerParams<Scalar>>& params, const std::vector<LayerParams<Scalar>>& grads,
               AdamState<Scalar>& state) {
  if (grads.size() != params.size() || state.first.size() != params.size() ||
      state.second.size() != params.size())
    throw ShapeError("adam: parameter, gradient and moment lists differ in length");
  for (std::size_t i = 0; i < grads.size(); ++i)
    if (!grads[i].weight.allFinite() || !grads[i].bias.allFinite())
      throw TrainingError("adam: non-finite gradient in layer " + std::to_string(i));

  ++state.step;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    detail::adam_update(params[i].weight, grads[i].weight, state.first[i].weight, state.second[i].weight, state,
                        c1, c2);
    detail::adam_update(params[i].bias, grads[i].bias, state.first[i].bias, state.second[i].bias, state, c1,
                        c2);
  }
}

}  // namespace jamwatch::nn
