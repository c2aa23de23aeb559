#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "jamwatch/fft.hpp"
#include "jamwatch/label.hpp"

namespace jamwatch {

enum class JammerKind { Uniform, Gaussian };

std::string_view to_string(JammerKind k);
JammerKind parse_jammer_kind(std::string_view s);

using Rng = std::mt19937_64;

/// Mixes a base seed with an index (splitmix64 finaliser). Used to give every
/// frame of a corpus its own independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Parameters of the synthetic radio scene. Powers are linear mean-square
/// values per complex sample.
struct ScenarioConfig {
  double sampling_rate = 120e6;
  std::size_t frame_len = 102400;
  double noise_floor_power = 1e-6;
  double signal_power = 1e-4;
  double jammer_power = 1e-2;
  JammerKind jammer_kind = JammerKind::Gaussian;
  std::size_t n_subcarriers = 512;
  double active_bandwidth = 100e6;  // occupied part of the sampled band
  std::size_t beacon_period = 20480;
  std::size_t beacon_len = 2048;
  std::size_t slot_len = 5120;  // TDD slot
  double burst_duty = 0.5;
  std::uint64_t seed = 1;

  /// Desk-scale scene: 32 windows of 128 samples per frame.
  static ScenarioConfig desk();

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

void to_json(nlohmann::json& j, const ScenarioConfig& c);
void from_json(const nlohmann::json& j, ScenarioConfig& c);

struct IQFrame {
  std::vector<cfloat> samples;
  double sampling_rate = 0.0;
  Label label = Label::EmptyChannel;
  std::uint64_t seed = 0;
};

/// i.i.d. complex noise with per-sample mean-square `power`.
/// Gaussian is circularly symmetric; Uniform draws I and Q independently on
/// [-a, a] with a = sqrt(3 power / 2).
std::vector<cdouble> synth_noise(std::size_t n, double power, JammerKind kind, Rng& rng);

/// Concatenated inverse-FFT blocks of random QPSK symbols on the central
/// `active_fraction` of `n_subcarriers` bins (DC excluded), scaled to
/// mean-square `power`. The last block is truncated to hit `burst_len`.
std::vector<cdouble> synth_multicarrier_burst(std::size_t n_subcarriers, std::size_t burst_len,
                                              double power, Rng& rng,
                                              double active_fraction = 5.0 / 6.0);

/// Deterministic in (cfg, label, seed).
IQFrame gen_frame(const ScenarioConfig& cfg, Label label, std::uint64_t seed);

struct CorpusManifest {
  ScenarioConfig config;
  std::map<Label, std::size_t> counts;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> frame_seeds;
};

struct Corpus {
  std::vector<IQFrame> frames;
  CorpusManifest manifest;
};

/// (label, seed) of every frame a corpus with these counts will contain.
std::vector<std::pair<Label, std::uint64_t>> corpus_plan(const std::map<Label, std::size_t>& counts,
                                                          std::uint64_t seed);

/// Frames ordered by label (empty, active, jammed); frame i is seeded with
/// derive_seed(seed, i).
Corpus gen_corpus(const ScenarioConfig& cfg, const std::map<Label, std::size_t>& counts,
                  std::uint64_t seed);

/// Mean of |x|^2 accumulated in double precision.
double mean_square(std::span<const cfloat> x);
double mean_square(std::span<const cdouble> x);

}  // namespace jamwatch
