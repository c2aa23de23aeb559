#pragma once

#include <optional>
#include <string>
#include <variant>

#include "jamwatch/nn/tensor.hpp"

namespace jamwatch::nn {

// Padding 0 means "valid".
struct Conv2D {
  Index out_channels = 1;
  Index kernel = 3;
  Index stride = 1;
  Index padding = 0;
};

/// Floor mode: trailing rows/columns that do not fill a window are dropped.
struct MaxPool2D {
  Index kernel = 2;
  Index stride = 2;
};

struct ConvT2D {
  Index out_channels = 1;
  Index kernel = 3;
  Index stride = 1;
  Index padding = 0;
  Index output_padding = 0;
};

struct ZeroPad2D {
  Index top = 0, bottom = 0, left = 0, right = 0;
};

struct Dense {
  Index out_features = 1;
};

struct Flatten {};

struct Reshape {
  Shape shape;
};

enum class ActivationKind { ReLU, Sigmoid, Linear };

struct Activation {
  ActivationKind kind = ActivationKind::Linear;
};

using LayerSpec =
    std::variant<Conv2D, MaxPool2D, ConvT2D, ZeroPad2D, Dense, Flatten, Reshape, Activation>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline std::string to_string(ActivationKind k) {
  switch (k) {
    case ActivationKind::ReLU: return "relu";
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::Linear: return "linear";
  }
  return "?";
}

inline std::string layer_name(const LayerSpec& spec) {
  return std::visit(Overloaded{
                        [](const Conv2D&) -> std::string { return "Conv2D"; },
                        [](const MaxPool2D&) -> std::string { return "MaxPool2D"; },
                        [](const ConvT2D&) -> std::string { return "ConvT2D"; },
                        [](const ZeroPad2D&) -> std::string { return "ZeroPad2D"; },
                        [](const Dense&) -> std::string { return "Dense"; },
                        [](const Flatten&) -> std::string { return "Flatten"; },
                        [](const Reshape&) -> std::string { return "Reshape"; },
                        [](const Activation& a) -> std::string { return "Activation(" + to_string(a.kind) + ")"; },
                    },
                    spec);
}

inline bool has_params(const LayerSpec& spec) {
  return std::holds_alternative<Conv2D>(spec) || std::holds_alternative<ConvT2D>(spec) ||
         std::holds_alternative<Dense>(spec);
}

namespace detail {

inline void require_image(const Shape& in, const char* what) {
  if (!in.is_image()) throw ShapeError(std::string(what) + " expects a rank-3 input, got " + in.str());
}

inline Index conv_out(Index in, Index k, Index stride, Index pad) {
  const Index span = in + 2 * pad - k;
  return span < 0 ? 0 : span / stride + 1;
}

}  // namespace detail

/// Static shape function of a layer. Throws ShapeError when `in` is not a
/// valid input or the output would be empty.
inline Shape output_shape(const LayerSpec& spec, const Shape& in) {
  Shape out = std::visit(
      Overloaded{
          [&](const Conv2D& c) {
            detail::require_image(in, "Conv2D");
            if (c.stride < 1 || c.kernel < 1 || c.padding < 0 || c.out_channels < 1)
              throw ShapeError("Conv2D has invalid hyper-parameters");
            return Shape{detail::conv_out(in[0], c.kernel, c.stride, c.padding),
                         detail::conv_out(in[1], c.kernel, c.stride, c.padding), c.out_channels};
          },
          [&](const MaxPool2D& p) {
            detail::require_image(in, "MaxPool2D");
            if (p.stride < 1 || p.kernel < 1) throw ShapeError("MaxPool2D has invalid hyper-parameters");
            return Shape{detail::conv_out(in[0], p.kernel, p.stride, 0),
                         detail::conv_out(in[1], p.kernel, p.stride, 0), in[2]};
          },
          [&](const ConvT2D& c) {
            detail::require_image(in, "ConvT2D");
            if (c.stride < 1 || c.kernel < 1 || c.padding < 0 || c.out_channels < 1 ||
                c.output_padding < 0 || c.output_padding >= c.stride)
              throw ShapeError("ConvT2D has invalid hyper-parameters");
            auto o = [&](Index h) { return (h - 1) * c.stride + c.kernel - 2 * c.padding + c.output_padding; };
            return Shape{o(in[0]), o(in[1]), c.out_channels};
          },
          [&](const ZeroPad2D& z) {
            detail::require_image(in, "ZeroPad2D");
            if (z.top < 0 || z.bottom < 0 || z.left < 0 || z.right < 0)
              throw ShapeError("ZeroPad2D has negative padding");
            return Shape{in[0] + z.top + z.bottom, in[1] + z.left + z.right, in[2]};
          },
          [&](const Dense& d) {
            if (in.rank() != 1) throw ShapeError("Dense expects a rank-1 input, got " + in.str());
            if (d.out_features < 1) throw ShapeError("Dense needs out_features >= 1");
            return Shape{d.out_features};
          },
          [&](const Flatten&) { return Shape{in.numel()}; },
          [&](const Reshape& r) {
            if (r.shape.numel() != in.numel())
              throw ShapeError("Reshape from " + in.str() + " to " + r.shape.str() + " changes size");
            return r.shape;
          },
          [&](const Activation&) { return in; },
      },
      spec);
  if (out.numel() <= 0)
    throw ShapeError(layer_name(spec) + " maps " + in.str() + " to empty shape " + out.str());
  return out;
}

/// Weight matrix and bias sizes of a trainable layer.
///   Conv2D : (k*k*in_ch) x out_ch, row = (kh*k + kw)*in_ch + ci
///   ConvT2D: in_ch x (k*k*out_ch), col = (kh*k + kw)*out_ch + co
///   Dense  : in x out
struct ParamShape {
  Index weight_rows = 0;
  Index weight_cols = 0;
  Index bias = 0;
  Index fan_in = 0;
  Index fan_out = 0;

  Index count() const { return weight_rows * weight_cols + bias; }
};

inline std::optional<ParamShape> param_shape(const LayerSpec& spec, const Shape& in) {
  if (const auto* c = std::get_if<Conv2D>(&spec)) {
    const Index kk = c->kernel * c->kernel;
    return ParamShape{kk * in[2], c->out_channels, c->out_channels, kk * in[2], kk * c->out_channels};
  }
  if (const auto* c = std::get_if<ConvT2D>(&spec)) {
    const Index kk = c->kernel * c->kernel;
    return ParamShape{in[2], kk * c->out_channels, c->out_channels, kk * in[2], kk * c->out_channels};
  }
  if (const auto* d = std::get_if<Dense>(&spec))
    return ParamShape{in[0], d->out_features, d->out_features, in[0], d->out_features};
  return std::nullopt;
}

}  // namespace jamwatch::nn
