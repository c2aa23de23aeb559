#include "jamwatch/models.hpp"

#include <sstream>

namespace jamwatch {

using nn::Activation;
using nn::ActivationKind;
using nn::Index;
using nn::LayerSpec;
using nn::Shape;

std::string_view to_string(ModelKind k) { return k == ModelKind::CAE ? "cae" : "cnn"; }
std::string_view to_string(ModelScale s) { return s == ModelScale::Full ? "full" : "desk"; }

ModelKind parse_model_kind(std::string_view s) {
  if (s == "cae") return ModelKind::CAE;
  if (s == "cnn") return ModelKind::CNN;
  throw ConfigError("model: expected cae|cnn, got '" + std::string(s) + "'");
}

ModelScale parse_model_scale(std::string_view s) {
  if (s == "full") return ModelScale::Full;
  if (s == "desk") return ModelScale::Desk;
  throw ConfigError("scale: expected full|desk, got '" + std::string(s) + "'");
}

namespace {

constexpr Activation kRelu{ActivationKind::ReLU};

void check_input(Index rows, Index cols) {
  if (rows < 16 || cols < 16)
    throw ConfigError("input " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " is below the 16x16 minimum");
}

/// Shape after `layers`, with errors tagged by layer index.
Shape resolve(const std::string& model, const Shape& input, const std::vector<LayerSpec>& layers) {
  Shape cur = input;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    try {
      cur = nn::output_shape(layers[i], cur);
    } catch (const ShapeError& e) {
      throw ShapeError(model + ": layer " + std::to_string(i) + " (" + nn::layer_name(layers[i]) +
                       "): " + e.what());
    }
  }
  return cur;
}

Index analytic_params(const Shape& input, const std::vector<LayerSpec>& layers) {
  Index total = 0;
  Shape cur = input;
  for (const auto& l : layers) {
    if (const auto ps = nn::param_shape(l, cur)) total += ps->count();
    cur = nn::output_shape(l, cur);
  }
  return total;
}

struct Widths {
  Index c1, c2, c3, t1, t2;
  Index pad;  // padding of the stride-1 convolutions
};

Widths widths_for(ModelScale s) {
  if (s == ModelScale::Full) return {32, 64, 128, 128, 64, 0};
  return {8, 16, 32, 32, 16, 1};
}

}  // namespace

ModelDescriptor cae_descriptor(Index rows, Index cols, ModelScale scale) {
  check_input(rows, cols);
  const Widths w = widths_for(scale);
  ModelDescriptor d{ModelKind::CAE, scale, Shape{rows, cols, 1}, {}, 0};
  auto& L = d.layers;

  L = {nn::Conv2D{w.c1, 3, 2, 0}, kRelu, nn::MaxPool2D{},
       nn::Conv2D{w.c2, 3, 1, w.pad}, kRelu, nn::MaxPool2D{}};
  const Shape pooled = resolve("cae", d.input_shape, L);
  L.insert(L.end(), {nn::Flatten{}, nn::Dense{8}, kRelu, nn::Dense{pooled.numel()}, kRelu, nn::Reshape{pooled},
                     nn::ConvT2D{w.t1, 3, 2, 0, 0}, kRelu, nn::ConvT2D{w.t2, 3, 2, 0, 0}, kRelu});
  const Shape up = resolve("cae", d.input_shape, L);
  L.push_back(nn::ZeroPad2D{0, rows / 2 - up[0], 0, cols / 2 - up[1]});
  L.push_back(nn::ConvT2D{1, 3, 2, 1, 1});
  L.push_back(Activation{ActivationKind::Linear});
  const Shape out = resolve("cae", d.input_shape, L);
  if (out != d.input_shape)
    throw ShapeError("cae: layer " + std::to_string(L.size() - 2) + " (ConvT2D): decoder output " + out.str() +
                     " does not match input " + d.input_shape.str());
  d.expected_param_total = analytic_params(d.input_shape, L);
  return d;
}

ModelDescriptor cnn_descriptor(Index rows, Index cols, ModelScale scale) {
  check_input(rows, cols);
  const Widths w = widths_for(scale);
  ModelDescriptor d{ModelKind::CNN, scale, Shape{rows, cols, 1}, {}, 0};
  d.layers = {nn::Conv2D{w.c1, 3, 2, 0},     kRelu, nn::MaxPool2D{},
              nn::Conv2D{w.c2, 3, 1, w.pad}, kRelu, nn::MaxPool2D{},
              nn::Conv2D{w.c3, 3, 1, w.pad}, kRelu, nn::MaxPool2D{},
              nn::Flatten{},
              nn::Dense{16}, kRelu,
              nn::Dense{8}, kRelu,
              nn::Dense{1}, Activation{ActivationKind::Sigmoid}};
  resolve("cnn", d.input_shape, d.layers);
  d.expected_param_total = analytic_params(d.input_shape, d.layers);
  return d;
}

ModelDescriptor descriptor_for(ModelKind kind, Index rows, Index cols, ModelScale scale) {
  return kind == ModelKind::CAE ? cae_descriptor(rows, cols, scale) : cnn_descriptor(rows, cols, scale);
}

nn::Network<float> build_cae(Index rows, Index cols, std::uint64_t seed) {
  return build(cae_descriptor(rows, cols, ModelScale::Full), seed);
}

nn::Network<float> build_cnn(Index rows, Index cols, std::uint64_t seed) {
  return build(cnn_descriptor(rows, cols, ModelScale::Full), seed);
}

nn::Network<float> build_scaled(ModelKind kind, Index rows, Index cols, std::uint64_t seed) {
  return build(descriptor_for(kind, rows, cols, ModelScale::Desk), seed);
}

std::vector<TableRow> layer_table(const nn::Network<float>& net) {
  const bool autoencoder = net.output_shape() == net.input_shape();
  std::vector<TableRow> rows;
  std::string section = autoencoder ? "Encoder" : "";
  rows.push_back({section, "Input", net.input_shape(), 0, false});
  int conv = 0, convt = 0;
  bool seen_dense = false;
  const auto& layers = net.layers();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (std::holds_alternative<nn::Activation>(l)) continue;
    TableRow r{section, "", net.output_shape(i), net.param_count(i), false};
    if (std::holds_alternative<nn::Conv2D>(l)) r.name = "Convolutional " + std::to_string(++conv);
    else if (std::holds_alternative<nn::ConvT2D>(l)) r.name = "Convolutional " + std::to_string(++convt) + "^T";
    else if (std::holds_alternative<nn::MaxPool2D>(l)) {
      r.name = "Max Pooling";
      r.inserted = i + 1 < layers.size() && std::holds_alternative<nn::Flatten>(layers[i + 1]);
    } else if (std::holds_alternative<nn::ZeroPad2D>(l)) r.name = "Zero Padding";
    else if (std::holds_alternative<nn::Flatten>(l)) r.name = "Flatten";
    else if (std::holds_alternative<nn::Reshape>(l)) r.name = "Reshape";
    else if (std::holds_alternative<nn::Dense>(l)) {
      r.name = "Dense";
      if (autoencoder && seen_dense && section == "Encoder") {
        section = "Decoder";
        r.section = section;
        rows.push_back({section, "Input", net.input_shape(i), 0, false});
      }
      seen_dense = true;
    }
    rows.push_back(r);
  }
  return rows;
}

std::string format_layer_table(const nn::Network<float>& net) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-18s %-18s %12s\n", "", "Layer", "Output size", "Parameters");
  os << line;
  bool any_inserted = false;
  for (const auto& r : layer_table(net)) {
    std::string shape = r.output.str();
    for (std::size_t p = shape.find('x'); p != std::string::npos; p = shape.find('x', p + 3))
      shape.replace(p, 1, " x ");
    const std::string name = r.name + (r.inserted ? " *" : "");
    any_inserted |= r.inserted;
    std::snprintf(line, sizeof line, "%-8s %-18s %-18s %12lld\n", r.section.c_str(), name.c_str(), shape.c_str(),
                  static_cast<long long>(r.params));
    os << line;
  }
  os << "Total parameters: " << nn::param_count(net) << "\n";
  if (any_inserted) os << "* pooling layer needed to reach the listed flatten width\n";
  return os.str();
}

}  // namespace jamwatch
