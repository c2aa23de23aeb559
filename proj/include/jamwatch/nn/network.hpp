#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "jamwatch/nn/layers.hpp"

namespace jamwatch::nn {

template <typename Scalar>
struct LayerParams {
  Matrix<Scalar> weight;
  Vector<Scalar> bias;

  Index count() const { return weight.size() + bias.size(); }
};

/// Ordered layer stack with its parameters. Shapes are resolved once at
/// construction; every mutable access to the parameters bumps
/// `generation()` so stale activations can be detected.
template <typename Scalar>
class Network {
 public:
  Network() = default;

  /// Resolves shapes and draws initial weights from `seed`: He-uniform for a
  /// layer followed by ReLU, Glorot-uniform otherwise, zero biases.
  /// Throws ShapeError naming the first layer whose input it cannot accept.
  Network(Shape input, std::vector<LayerSpec> layers, std::uint64_t seed = 0)
      : input_(std::move(input)), layers_(std::move(layers)), seed_(seed) {
    Shape cur = input_;
    shapes_.reserve(layers_.size());
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      try {
        cur = nn::output_shape(layers_[i], cur);
      } catch (const ShapeError& e) {
        throw ShapeError("layer " + std::to_string(i) + " (" + layer_name(layers_[i]) + "): " + e.what());
      }
      shapes_.push_back(cur);
    }
    initialize();
  }

  const Shape& input_shape() const { return input_; }
  const Shape& output_shape() const { return shapes_.empty() ? input_ : shapes_.back(); }
  const Shape& output_shape(std::size_t layer) const { return shapes_.at(layer); }
  const Shape& input_shape(std::size_t layer) const { return layer == 0 ? input_ : shapes_.at(layer - 1); }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  std::size_t size() const { return layers_.size(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t generation() const { return generation_; }

  const std::vector<LayerParams<Scalar>>& params() const { return params_; }
  std::vector<LayerParams<Scalar>>& mutable_params() {
    ++generation_;
    return params_;
  }

  /// Trainable parameter count of one layer (0 for parameter-free layers).
  Index param_count(std::size_t layer) const { return params_.at(layer).count(); }

  template <typename Other>
  Network<Other> cast() const {
    Network<Other> out;
    out.input_ = input_;
    out.layers_ = layers_;
    out.shapes_ = shapes_;
    out.seed_ = seed_;
    for (const auto& p : params_)
      out.params_.push_back({p.weight.template cast<Other>(), p.bias.template cast<Other>()});
    return out;
  }

 private:
  template <typename>
  friend class Network;

  void initialize() {
    std::mt19937_64 rng(seed_);
    params_.assign(layers_.size(), {});
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const auto ps = param_shape(layers_[i], input_shape(i));
      if (!ps) continue;
      bool relu_next = false;
      if (i + 1 < layers_.size())
        if (const auto* a = std::get_if<Activation>(&layers_[i + 1]))
          relu_next = a->kind == ActivationKind::ReLU;
      const double limit = relu_next ? std::sqrt(6.0 / static_cast<double>(ps->fan_in))
                                     : std::sqrt(6.0 / static_cast<double>(ps->fan_in + ps->fan_out));
      std::uniform_real_distribution<double> dist(-limit, limit);
      auto& p = params_[i];
      p.weight.resize(ps->weight_rows, ps->weight_cols);
      for (Index k = 0; k < p.weight.size(); ++k) p.weight.data()[k] = static_cast<Scalar>(dist(rng));
      p.bias = Vector<Scalar>::Zero(ps->bias);
    }
  }

  Shape input_;
  std::vector<LayerSpec> layers_;
  std::vector<Shape> shapes_;
  std::vector<LayerParams<Scalar>> params_;
  std::uint64_t seed_ = 0;
  std::uint64_t generation_ = 0;
};

template <typename Scalar>
Index param_count(const Network<Scalar>& net) {
  Index n = 0;
  for (const auto& p : net.params()) n += p.count();
  return n;
}

/// Everything backward() needs: values[0] is the input, values[i+1] the
/// output of layer i.
template <typename Scalar>
struct Activations {
  std::vector<Tensor<Scalar>> values;
  std::vector<std::vector<Index>> argmax;  // per layer, max-pool routing
  const void* network = nullptr;
  std::uint64_t generation = 0;

  const Tensor<Scalar>& output() const { return values.back(); }
};

template <typename Scalar>
struct Gradients {
  std::vector<LayerParams<Scalar>> params;
  Tensor<Scalar> input;
};

namespace detail {

/// Gathers k x k patches of an HWC image into rows of a (out_h*out_w) x
/// (k*k*C) matrix. Out-of-range taps (padding) stay zero.
template <typename Scalar>
Matrix<Scalar> im2col(const Tensor<Scalar>& x, Index k, Index stride, Index pad, Index out_h, Index out_w) {
  const Index H = x.shape[0], W = x.shape[1], C = x.shape[2];
  Matrix<Scalar> cols = Matrix<Scalar>::Zero(out_h * out_w, k * k * C);
  for (Index oh = 0; oh < out_h; ++oh)
    for (Index ow = 0; ow < out_w; ++ow) {
      Scalar* row = cols.data() + (oh * out_w + ow) * k * k * C;
      for (Index kh = 0; kh < k; ++kh) {
        const Index ih = oh * stride + kh - pad;
        if (ih < 0 || ih >= H) continue;
        for (Index kw = 0; kw < k; ++kw) {
          const Index iw = ow * stride + kw - pad;
          if (iw < 0 || iw >= W) continue;
          std::memcpy(row + (kh * k + kw) * C, x.data.data() + (ih * W + iw) * C, sizeof(Scalar) * C);
        }
      }
    }
  return cols;
}

/// Adjoint of im2col: scatter-adds patch rows back into an HWC image.
template <typename Scalar>
void col2im(const Matrix<Scalar>& cols, Tensor<Scalar>& x, Index k, Index stride, Index pad, Index out_h,
            Index out_w) {
  const Index H = x.shape[0], W = x.shape[1], C = x.shape[2];
  for (Index oh = 0; oh < out_h; ++oh)
    for (Index ow = 0; ow < out_w; ++ow) {
      const Scalar* row = cols.data() + (oh * out_w + ow) * k * k * C;
      for (Index kh = 0; kh < k; ++kh) {
        const Index ih = oh * stride + kh - pad;
        if (ih < 0 || ih >= H) continue;
        for (Index kw = 0; kw < k; ++kw) {
          const Index iw = ow * stride + kw - pad;
          if (iw < 0 || iw >= W) continue;
          Scalar* dst = x.data.data() + (ih * W + iw) * C;
          const Scalar* src = row + (kh * k + kw) * C;
          for (Index c = 0; c < C; ++c) dst[c] += src[c];
        }
      }
    }
}

template <typename Scalar>
Scalar sigmoid(Scalar v) {
  return v >= 0 ? Scalar(1) / (Scalar(1) + std::exp(-v)) : std::exp(v) / (Scalar(1) + std::exp(v));
}

template <typename Scalar>
Tensor<Scalar> layer_forward(const LayerSpec& spec, const LayerParams<Scalar>& p, const Tensor<Scalar>& x,
                             const Shape& out_shape, std::vector<Index>* argmax) {
  Tensor<Scalar> y(out_shape);
  std::visit(
      Overloaded{
          [&](const Conv2D& c) {
            const Matrix<Scalar> cols = im2col(x, c.kernel, c.stride, c.padding, out_shape[0], out_shape[1]);
            auto out = y.channels();
            out.noalias() = cols * p.weight;
            out.rowwise() += p.bias.transpose();
          },
          [&](const ConvT2D& c) {
            const Matrix<Scalar> cols = x.channels() * p.weight;
            col2im(cols, y, c.kernel, c.stride, c.padding, x.shape[0], x.shape[1]);
            y.channels().rowwise() += p.bias.transpose();
          },
          [&](const MaxPool2D& mp) {
            const Index W = x.shape[1], C = x.shape[2];
            if (argmax) argmax->assign(static_cast<std::size_t>(y.size()), 0);
            for (Index oh = 0; oh < out_shape[0]; ++oh)
              for (Index ow = 0; ow < out_shape[1]; ++ow)
                for (Index c = 0; c < C; ++c) {
                  Index best = (oh * mp.stride * W + ow * mp.stride) * C + c;
                  for (Index i = 0; i < mp.kernel; ++i)
                    for (Index j = 0; j < mp.kernel; ++j) {
                      const Index idx = ((oh * mp.stride + i) * W + ow * mp.stride + j) * C + c;
                      if (x.data[idx] > x.data[best]) best = idx;  // strict: first maximum wins
                    }
                  const Index o = (oh * out_shape[1] + ow) * C + c;
                  y.data[o] = x.data[best];
                  if (argmax) (*argmax)[static_cast<std::size_t>(o)] = best;
                }
          },
          [&](const ZeroPad2D& z) {
            const Index H = x.shape[0], W = x.shape[1], C = x.shape[2];
            for (Index h = 0; h < H; ++h)
              std::memcpy(y.data.data() + ((h + z.top) * out_shape[1] + z.left) * C,
                          x.data.data() + h * W * C, sizeof(Scalar) * W * C);
          },
          [&](const Dense&) { y.data.noalias() = p.weight.transpose() * x.data + p.bias; },
          [&](const Flatten&) { y.data = x.data; },
          [&](const Reshape&) { y.data = x.data; },
          [&](const Activation& a) {
            switch (a.kind) {
              case ActivationKind::ReLU: y.data = x.data.cwiseMax(Scalar(0)); break;
              case ActivationKind::Sigmoid: y.data = x.data.unaryExpr([](Scalar v) { return sigmoid(v); }); break;
              case ActivationKind::Linear: y.data = x.data; break;
            }
          },
      },
      spec);
  return y;
}

/// Returns dL/dx; accumulates parameter gradients into `grad`.
template <typename Scalar>
Tensor<Scalar> layer_backward(const LayerSpec& spec, const LayerParams<Scalar>& p, const Tensor<Scalar>& x,
                              const Tensor<Scalar>& y, const Tensor<Scalar>& dy,
                              const std::vector<Index>& argmax, LayerParams<Scalar>& grad) {
  Tensor<Scalar> dx(x.shape);
  std::visit(
      Overloaded{
          [&](const Conv2D& c) {
            const Matrix<Scalar> cols = im2col(x, c.kernel, c.stride, c.padding, y.shape[0], y.shape[1]);
            const auto g = dy.channels();
            grad.weight.noalias() += cols.transpose() * g;
            grad.bias += g.colwise().sum().transpose();
            const Matrix<Scalar> dcols = g * p.weight.transpose();
            col2im(dcols, dx, c.kernel, c.stride, c.padding, y.shape[0], y.shape[1]);
          },
          [&](const ConvT2D& c) {
            const Matrix<Scalar> dcols = im2col(dy, c.kernel, c.stride, c.padding, x.shape[0], x.shape[1]);
            const auto xin = x.channels();
            grad.weight.noalias() += xin.transpose() * dcols;
            grad.bias += dy.channels().colwise().sum().transpose();
            dx.channels().noalias() = dcols * p.weight.transpose();
          },
          [&](const MaxPool2D&) {
            for (Index o = 0; o < dy.size(); ++o) dx.data[argmax[static_cast<std::size_t>(o)]] += dy.data[o];
          },
          [&](const ZeroPad2D& z) {
            const Index H = x.shape[0], W = x.shape[1], C = x.shape[2];
            for (Index h = 0; h < H; ++h)
              std::memcpy(dx.data.data() + h * W * C,
                          dy.data.data() + ((h + z.top) * y.shape[1] + z.left) * C, sizeof(Scalar) * W * C);
          },
          [&](const Dense&) {
            grad.weight.noalias() += x.data * dy.data.transpose();
            grad.bias += dy.data;
            dx.data.noalias() = p.weight * dy.data;
          },
          [&](const Flatten&) { dx.data = dy.data; },
          [&](const Reshape&) { dx.data = dy.data; },
          [&](const Activation& a) {
            switch (a.kind) {
              case ActivationKind::ReLU:
                dx.data = (x.data.array() > Scalar(0)).select(dy.data, Scalar(0));
                break;
              case ActivationKind::Sigmoid:
                dx.data = dy.data.array() * y.data.array() * (Scalar(1) - y.data.array());
                break;
              case ActivationKind::Linear: dx.data = dy.data; break;
            }
          },
      },
      spec);
  return dx;
}

template <typename Scalar>
void check_input(const Network<Scalar>& net, const Tensor<Scalar>& x) {
  if (x.shape != net.input_shape())
    throw ShapeError("layer 0 (" + (net.size() ? layer_name(net.layers()[0]) : std::string("input")) +
                     "): input shape " + x.shape.str() + " does not match network input " +
                     net.input_shape().str());
}

}  // namespace detail

/// Runs the network and keeps every intermediate tensor for backward().
template <typename Scalar>
Activations<Scalar> forward(const Network<Scalar>& net, const Tensor<Scalar>& x) {
  detail::check_input(net, x);
  Activations<Scalar> acts;
  acts.network = &net;
  acts.generation = net.generation();
  acts.values.reserve(net.size() + 1);
  acts.values.push_back(x);
  acts.argmax.resize(net.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    acts.values.push_back(detail::layer_forward(net.layers()[i], net.params()[i], acts.values.back(),
                                                net.output_shape(i), &acts.argmax[i]));
  return acts;
}

/// Output only; intermediates are dropped as soon as they are consumed.
template <typename Scalar>
Tensor<Scalar> predict(const Network<Scalar>& net, const Tensor<Scalar>& x) {
  detail::check_input(net, x);
  Tensor<Scalar> cur = x;
  for (std::size_t i = 0; i < net.size(); ++i)
    cur = detail::layer_forward(net.layers()[i], net.params()[i], cur, net.output_shape(i),
                                static_cast<std::vector<Index>*>(nullptr));
  return cur;
}

template <typename Scalar>
std::vector<LayerParams<Scalar>> zero_gradients(const Network<Scalar>& net) {
  std::vector<LayerParams<Scalar>> g(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& p = net.params()[i];
    g[i].weight = Matrix<Scalar>::Zero(p.weight.rows(), p.weight.cols());
    g[i].bias = Vector<Scalar>::Zero(p.bias.size());
  }
  return g;
}

/// Back-propagates `upstream` (dL/d output) and adds the parameter gradients
/// into `accum`, which must come from zero_gradients(net). Returns dL/d input.
/// With `skip_last` > 0, `upstream` is the gradient w.r.t. the input of the
/// last `skip_last` layers instead, and those layers are not traversed (used
/// to feed a fused sigmoid/cross-entropy gradient straight to the logit).
/// Throws StateError when `acts` was not produced by `net` in its current state.
template <typename Scalar>
Tensor<Scalar> backward_accumulate(const Network<Scalar>& net, const Activations<Scalar>& acts,
                                   const Tensor<Scalar>& upstream, std::vector<LayerParams<Scalar>>& accum,
                                   std::size_t skip_last = 0) {
  if (acts.network != &net || acts.generation != net.generation() || acts.values.size() != net.size() + 1)
    throw StateError("activations are stale: they do not come from this network's current parameters");
  if (skip_last > net.size()) throw ShapeError("cannot skip more layers than the network has");
  const std::size_t top = net.size() - skip_last;
  const Shape& expected = acts.values[top].shape;
  if (upstream.shape != expected)
    throw ShapeError("upstream gradient shape " + upstream.shape.str() + " does not match " + expected.str());
  if (accum.size() != net.size()) throw ShapeError("gradient accumulator does not match network");
  Tensor<Scalar> grad = upstream;
  for (std::size_t i = top; i-- > 0;)
    grad = detail::layer_backward(net.layers()[i], net.params()[i], acts.values[i], acts.values[i + 1], grad,
                                  acts.argmax[i], accum[i]);
  return grad;
}

template <typename Scalar>
Gradients<Scalar> backward(const Network<Scalar>& net, const Activations<Scalar>& acts,
                           const Tensor<Scalar>& upstream) {
  Gradients<Scalar> g;
  g.params = zero_gradients(net);
  g.input = backward_accumulate(net, acts, upstream, g.params);
  return g;
}

}  // namespace jamwatch::nn
