#include "jamwatch/nn/checkpoint.hpp"

#include "jamwatch/container.hpp"

namespace jamwatch::nn {

namespace {

constexpr std::string_view kCheckpointMagic = "JWCKPT01";

ActivationKind parse_activation(const std::string& s) {
  if (s == "relu") return ActivationKind::ReLU;
  if (s == "sigmoid") return ActivationKind::Sigmoid;
  if (s == "linear") return ActivationKind::Linear;
  throw FormatError("unknown activation '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const LayerSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Conv2D& c) {
            return nlohmann::json{{"type", "conv2d"}, {"out_channels", c.out_channels}, {"kernel", c.kernel},
                                  {"stride", c.stride}, {"padding", c.padding}};
          },
          [](const MaxPool2D& p) {
            return nlohmann::json{{"type", "maxpool2d"}, {"kernel", p.kernel}, {"stride", p.stride}};
          },
          [](const ConvT2D& c) {
            return nlohmann::json{{"type", "convt2d"}, {"out_channels", c.out_channels}, {"kernel", c.kernel},
                                  {"stride", c.stride}, {"padding", c.padding},
                                  {"output_padding", c.output_padding}};
          },
          [](const ZeroPad2D& z) {
            return nlohmann::json{{"type", "zeropad2d"}, {"top", z.top}, {"bottom", z.bottom},
                                  {"left", z.left}, {"right", z.right}};
          },
          [](const Dense& d) { return nlohmann::json{{"type", "dense"}, {"out_features", d.out_features}}; },
          [](const Flatten&) { return nlohmann::json{{"type", "flatten"}}; },
          [](const Reshape& r) { return nlohmann::json{{"type", "reshape"}, {"shape", r.shape.dims}}; },
          [](const Activation& a) { return nlohmann::json{{"type", "activation"}, {"kind", to_string(a.kind)}}; },
      },
      spec);
}

LayerSpec layer_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "conv2d")
      return Conv2D{j.at("out_channels"), j.at("kernel"), j.at("stride"), j.at("padding")};
    if (type == "maxpool2d") return MaxPool2D{j.at("kernel"), j.at("stride")};
    if (type == "convt2d")
      return ConvT2D{j.at("out_channels"), j.at("kernel"), j.at("stride"), j.at("padding"),
                     j.at("output_padding")};
    if (type == "zeropad2d") return ZeroPad2D{j.at("top"), j.at("bottom"), j.at("left"), j.at("right")};
    if (type == "dense") return Dense{j.at("out_features")};
    if (type == "flatten") return Flatten{};
    if (type == "reshape") return Reshape{Shape(j.at("shape").get<std::vector<Index>>())};
    if (type == "activation") return Activation{parse_activation(j.at("kind").get<std::string>())};
    throw FormatError("unknown layer type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed layer description: ") + e.what());
  }
}

nlohmann::json describe_architecture(const Network<float>& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : net.layers()) layers.push_back(to_json(l));
  return {{"input_shape", net.input_shape().dims}, {"seed", net.seed()}, {"layers", layers}};
}

Network<float> network_from_json(const nlohmann::json& arch) {
  std::vector<LayerSpec> layers;
  Shape input;
  std::uint64_t seed = 0;
  try {
    input = Shape(arch.at("input_shape").get<std::vector<Index>>());
    seed = arch.at("seed").get<std::uint64_t>();
    for (const auto& l : arch.at("layers")) layers.push_back(layer_from_json(l));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed architecture: ") + e.what());
  }
  return Network<float>(input, std::move(layers), seed);
}

void save_checkpoint(const std::filesystem::path& path, const Network<float>& net, const nlohmann::json& extra) {
  nlohmann::json header = extra;
  header["format_version"] = kCheckpointVersion;
  header["architecture"] = describe_architecture(net);
  header["param_count"] = param_count(net);
  std::vector<float> blob;
  blob.reserve(static_cast<std::size_t>(param_count(net)));
  for (const auto& p : net.params()) {
    blob.insert(blob.end(), p.weight.data(), p.weight.data() + p.weight.size());
    blob.insert(blob.end(), p.bias.data(), p.bias.data() + p.bias.size());
  }
  write_container(path, kCheckpointMagic, header, blob);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  Container c = read_container(path, kCheckpointMagic);
  const auto version = c.header.value("format_version", -1);
  if (version != kCheckpointVersion)
    throw FormatError(path.string() + ": unsupported checkpoint version " + std::to_string(version));
  if (!c.header.contains("architecture")) throw FormatError(path.string() + ": missing architecture");
  Checkpoint ck{network_from_json(c.header.at("architecture")), c.header};
  if (static_cast<Index>(c.payload.size()) != param_count(ck.net))
    throw FormatError(path.string() + ": parameter blob holds " + std::to_string(c.payload.size()) +
                      " floats, architecture needs " + std::to_string(param_count(ck.net)));
  std::size_t off = 0;
  for (auto& p : ck.net.mutable_params()) {
    std::copy_n(c.payload.data() + off, p.weight.size(), p.weight.data());
    off += static_cast<std::size_t>(p.weight.size());
    std::copy_n(c.payload.data() + off, p.bias.size(), p.bias.data());
    off += static_cast<std::size_t>(p.bias.size());
  }
  return ck;
}

}  // namespace jamwatch::nn
