#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "jamwatch/nn/network.hpp"

namespace jamwatch::nn {

nlohmann::json to_json(const LayerSpec& spec);
LayerSpec layer_from_json(const nlohmann::json& j);

/// Architecture as JSON: {input_shape, seed, layers:[...]}.
nlohmann::json describe_architecture(const Network<float>& net);
Network<float> network_from_json(const nlohmann::json& arch);

struct Checkpoint {
  Network<float> net;
  nlohmann::json header;
};

inline constexpr int kCheckpointVersion = 1;

/// JSON header (format_version, architecture, `extra`) followed by every
/// layer's weight then bias, row-major little-endian f32.
void save_checkpoint(const std::filesystem::path& path, const Network<float>& net,
                     const nlohmann::json& extra = nlohmann::json::object());

/// Throws FormatError when the version, architecture or blob size is wrong.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace jamwatch::nn
