#pragma once

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "jamwatch/iq_sim.hpp"

namespace jamwatch {

/// How a corpus is laid out in its directory. Both carry `manifest.json`;
/// PerFrame adds `frame_NNNNNN.iq` plus a JSON sidecar for each frame,
/// Concatenated stores every frame back to back in `frames.iq`.
/// Sample files are interleaved little-endian f32 I,Q pairs.
enum class IqLayout { PerFrame, Concatenated };

std::string_view to_string(IqLayout l);
IqLayout parse_iq_layout(std::string_view s);

/// Appends frames one at a time; manifest.json is written by finish().
class IqCorpusWriter {
 public:
  IqCorpusWriter(std::filesystem::path dir, const ScenarioConfig& config, std::uint64_t seed, IqLayout layout,
                 nlohmann::json extra = nlohmann::json::object());

  void append(const IQFrame& frame);
  void finish();

 private:
  std::filesystem::path dir_;
  ScenarioConfig config_;
  std::uint64_t seed_;
  IqLayout layout_;
  nlohmann::json extra_;
  nlohmann::json frames_ = nlohmann::json::array();
  std::map<Label, std::size_t> counts_;
  std::ofstream concat_;
};

/// `extra` is merged into the manifest (used for the experiment config hash).
void write_iq_corpus(const std::filesystem::path& dir, const Corpus& corpus, IqLayout layout,
                     const nlohmann::json& extra = nlohmann::json::object());

Corpus read_iq_corpus(const std::filesystem::path& dir);

void write_iq_samples(const std::filesystem::path& path, std::span<const cfloat> samples);
std::vector<cfloat> read_iq_samples(const std::filesystem::path& path, std::size_t count);

/// Random access into a corpus directory without loading it whole.
class IqCorpusReader {
 public:
  explicit IqCorpusReader(std::filesystem::path dir);

  std::size_t size() const { return labels_.size(); }
  const nlohmann::json& manifest() const { return manifest_; }
  Label label(std::size_t index) const { return labels_.at(index); }

  /// Reads frame `index` from disk.
  IQFrame load(std::size_t index);

 private:
  std::filesystem::path dir_;
  nlohmann::json manifest_;
  IqLayout layout_;
  std::size_t frame_len_ = 0;
  double sampling_rate_ = 0;
  std::vector<Label> labels_;
  std::vector<std::uint64_t> seeds_;
  std::ifstream concat_;
};

}  // namespace jamwatch
