#pragma once

#include <string>

#include "jamwatch/nn/network.hpp"

namespace jamwatch {

enum class ModelKind { CAE, CNN };
enum class ModelScale { Full, Desk };

std::string_view to_string(ModelKind k);
std::string_view to_string(ModelScale s);
ModelKind parse_model_kind(std::string_view s);
ModelScale parse_model_scale(std::string_view s);

/// Layer recipe of one detector model, before any weights exist.
struct ModelDescriptor {
  ModelKind kind = ModelKind::CAE;
  ModelScale scale = ModelScale::Full;
  nn::Shape input_shape;
  std::vector<nn::LayerSpec> layers;
  nn::Index expected_param_total = 0;
};

/// Convolutional autoencoder. Full scale reproduces the 100x1024 reference
/// topology (1,675,017 parameters); an unlisted 2x2 max-pool after the second
/// convolution is what makes the 88704-wide flatten consistent. Desk scale
/// quarters the channel widths and pads the stride-1 convolution.
/// Throws ConfigError for inputs below 16x16 and ShapeError naming the
/// failing layer when the shape chain does not close.
ModelDescriptor cae_descriptor(nn::Index rows, nn::Index cols, ModelScale scale = ModelScale::Full);

/// Convolutional classifier with a sigmoid output neuron; full scale has
/// 600,737 parameters and a reconciling max-pool after the third convolution.
ModelDescriptor cnn_descriptor(nn::Index rows, nn::Index cols, ModelScale scale = ModelScale::Full);

ModelDescriptor descriptor_for(ModelKind kind, nn::Index rows, nn::Index cols, ModelScale scale);

template <typename Scalar = float>
nn::Network<Scalar> build(const ModelDescriptor& d, std::uint64_t seed = 0) {
  nn::Network<Scalar> net(d.input_shape, d.layers, seed);
  if (nn::param_count(net) != d.expected_param_total)
    throw ShapeError("model has " + std::to_string(nn::param_count(net)) + " parameters, expected " +
                     std::to_string(d.expected_param_total));
  return net;
}

nn::Network<float> build_cae(nn::Index rows = 100, nn::Index cols = 1024, std::uint64_t seed = 0);
nn::Network<float> build_cnn(nn::Index rows = 100, nn::Index cols = 1024, std::uint64_t seed = 0);
nn::Network<float> build_scaled(ModelKind kind, nn::Index rows, nn::Index cols, std::uint64_t seed = 0);

/// One row per visible layer (activations folded into their producer).
struct TableRow {
  std::string section;  // "Encoder", "Decoder" or ""
  std::string name;
  nn::Shape output;
  nn::Index params = 0;
  bool inserted = false;  // reconciliation layer absent from the reference table
};

std::vector<TableRow> layer_table(const nn::Network<float>& net);

/// Plain-text rendering of layer_table().
std::string format_layer_table(const nn::Network<float>& net);

}  // namespace jamwatch
