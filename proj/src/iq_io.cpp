#include "jamwatch/iq_io.hpp"

#include <cstdio>

#include "jamwatch/container.hpp"
#include "jamwatch/error.hpp"

namespace jamwatch {

namespace fs = std::filesystem;

namespace {

constexpr int kIqFormatVersion = 1;

std::string frame_stem(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu", i);
  return buf;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream is(p);
  if (!is) throw FormatError(p.string() + ": cannot open");
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(p.string() + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace

std::string_view to_string(IqLayout l) {
  return l == IqLayout::PerFrame ? "per-frame" : "concatenated";
}

IqLayout parse_iq_layout(std::string_view s) {
  if (s == "per-frame") return IqLayout::PerFrame;
  if (s == "concatenated") return IqLayout::Concatenated;
  throw ConfigError("layout: expected per-frame|concatenated, got '" + std::string(s) + "'");
}

void write_iq_samples(const fs::path& path, std::span<const cfloat> samples) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError(path.string() + ": cannot open for writing");
  write_f32(os, {reinterpret_cast<const float*>(samples.data()), samples.size() * 2});
}

std::vector<cfloat> read_iq_samples(const fs::path& path, std::size_t count) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(path.string() + ": cannot open");
  std::vector<cfloat> out(count);
  read_f32(is, {reinterpret_cast<float*>(out.data()), count * 2}, path.string());
  return out;
}

IqCorpusWriter::IqCorpusWriter(fs::path dir, const ScenarioConfig& config, std::uint64_t seed, IqLayout layout,
                               nlohmann::json extra)
    : dir_(std::move(dir)), config_(config), seed_(seed), layout_(layout), extra_(std::move(extra)) {
  fs::create_directories(dir_);
  for (Label l : kAllLabels) counts_[l] = 0;
  if (layout_ == IqLayout::Concatenated) {
    concat_.open(dir_ / "frames.iq", std::ios::binary | std::ios::trunc);
    if (!concat_) throw FormatError((dir_ / "frames.iq").string() + ": cannot open for writing");
  }
}

void IqCorpusWriter::append(const IQFrame& f) {
  const std::size_t i = frames_.size();
  if (f.samples.size() != config_.frame_len)
    throw LengthError("frame " + std::to_string(i) + " has " + std::to_string(f.samples.size()) +
                      " samples, manifest says " + std::to_string(config_.frame_len));
  nlohmann::json entry{{"index", i}, {"label", std::string(to_string(f.label))}, {"seed", f.seed}};
  const std::span<const float> raw{reinterpret_cast<const float*>(f.samples.data()), f.samples.size() * 2};
  if (layout_ == IqLayout::Concatenated) {
    entry["offset_bytes"] = i * config_.frame_len * 8;
    write_f32(concat_, raw);
  } else {
    const std::string stem = frame_stem(i);
    entry["file"] = stem + ".iq";
    write_iq_samples(dir_ / (stem + ".iq"), f.samples);
    nlohmann::json sidecar{{"sampling_rate", f.sampling_rate},
                           {"frame_len", f.samples.size()},
                           {"label", std::string(to_string(f.label))},
                           {"seed", f.seed},
                           {"config", config_}};
    write_text_file(dir_ / (stem + ".json"), sidecar.dump(2) + "\n");
  }
  ++counts_[f.label];
  frames_.push_back(std::move(entry));
}

void IqCorpusWriter::finish() {
  if (concat_.is_open()) {
    concat_.flush();
    if (!concat_) throw FormatError((dir_ / "frames.iq").string() + ": write failed");
    concat_.close();
  }
  nlohmann::json manifest = extra_;
  manifest["format_version"] = kIqFormatVersion;
  manifest["layout"] = std::string(to_string(layout_));
  manifest["sampling_rate"] = config_.sampling_rate;
  manifest["frame_len"] = config_.frame_len;
  manifest["seed"] = seed_;
  manifest["config"] = config_;
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [label, n] : counts_) counts[std::string(to_string(label))] = n;
  manifest["counts"] = counts;
  manifest["frames"] = frames_;
  write_text_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
}

void write_iq_corpus(const fs::path& dir, const Corpus& corpus, IqLayout layout, const nlohmann::json& extra) {
  IqCorpusWriter w(dir, corpus.manifest.config, corpus.manifest.seed, layout, extra);
  for (const auto& f : corpus.frames) w.append(f);
  w.finish();
}

IqCorpusReader::IqCorpusReader(fs::path dir) : dir_(std::move(dir)) {
  manifest_ = read_json(dir_ / "manifest.json");
  try {
    layout_ = parse_iq_layout(manifest_.at("layout").get<std::string>());
    frame_len_ = manifest_.at("frame_len").get<std::size_t>();
    sampling_rate_ = manifest_.at("sampling_rate").get<double>();
    for (const auto& e : manifest_.at("frames")) {
      labels_.push_back(parse_label(e.at("label").get<std::string>()));
      seeds_.push_back(e.at("seed").get<std::uint64_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError((dir_ / "manifest.json").string() + ": " + e.what());
  }
  if (layout_ == IqLayout::Concatenated) {
    const fs::path p = dir_ / "frames.iq";
    concat_.open(p, std::ios::binary);
    if (!concat_) throw FormatError(p.string() + ": cannot open");
    const auto expected = labels_.size() * frame_len_ * 8;
    if (fs::file_size(p) != expected)
      throw FormatError(p.string() + ": size " + std::to_string(fs::file_size(p)) +
                        " does not match manifest (" + std::to_string(expected) + " bytes)");
  }
}

IQFrame IqCorpusReader::load(std::size_t index) {
  if (index >= size())
    throw ArgumentError("frame index " + std::to_string(index) + " out of range (" +
                        std::to_string(size()) + " frames)");
  IQFrame f;
  f.sampling_rate = sampling_rate_;
  f.label = labels_[index];
  f.seed = seeds_[index];
  if (layout_ == IqLayout::Concatenated) {
    f.samples.resize(frame_len_);
    concat_.clear();
    concat_.seekg(static_cast<std::streamoff>(index * frame_len_ * 8));
    read_f32(concat_, {reinterpret_cast<float*>(f.samples.data()), frame_len_ * 2},
             (dir_ / "frames.iq").string());
  } else {
    f.samples = read_iq_samples(dir_ / (frame_stem(index) + ".iq"), frame_len_);
  }
  return f;
}

Corpus read_iq_corpus(const fs::path& dir) {
  IqCorpusReader reader(dir);
  Corpus c;
  const auto& m = reader.manifest();
  try {
    c.manifest.config = m.at("config").get<ScenarioConfig>();
    c.manifest.seed = m.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : m.at("counts").items()) c.manifest.counts[parse_label(k)] = v.get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError((dir / "manifest.json").string() + ": " + e.what());
  }
  for (std::size_t i = 0; i < reader.size(); ++i) {
    c.frames.push_back(reader.load(i));
    c.manifest.frame_seeds.push_back(c.frames.back().seed);
  }
  return c;
}

}  // namespace jamwatch
