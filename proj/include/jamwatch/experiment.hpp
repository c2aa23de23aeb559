#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jamwatch/bench.hpp"
#include "jamwatch/iq_io.hpp"
#include "jamwatch/iq_sim.hpp"
#include "jamwatch/models.hpp"
#include "jamwatch/training.hpp"

namespace jamwatch {

using LabelCounts = std::map<Label, std::size_t>;

/// Per-split, per-label sample counts.
struct SplitSpec {
  LabelCounts train, val, test;

  /// 6000 trusted train (half empty, half active), 800 trusted validation,
  /// 800 balanced test. Desk scale: 600 / 80 / 200.
  static SplitSpec unsupervised(ModelScale scale);
  /// 4500 / 1800 / 1200 spread evenly over the three cases.
  /// Desk scale: 450 / 180 / 120.
  static SplitSpec supervised(ModelScale scale);

  /// Reconstruction training forbids jammed train/val samples.
  void validate(ModelKind kind) const;
  std::size_t total() const;
};

struct SpectrogramConfig {
  std::size_t window = 1024;
  std::size_t rows = 100;
  double epsilon = kNegLogEpsilon;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  ModelKind model = ModelKind::CAE;
  ModelScale scale = ModelScale::Full;
  IqLayout layout = IqLayout::Concatenated;
  ScenarioConfig scenario;
  SpectrogramConfig spectrogram;
  SplitSpec splits;
  TrainConfig training;

  /// Recipe defaults: CAE uses the unsupervised splits, CNN the supervised
  /// ones; desk scale shrinks frames to 32 windows of 128 samples.
  static ExperimentConfig defaults(ModelKind model, ModelScale scale, std::uint64_t seed = 1);

  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);

  /// Fingerprint of to_json(); stamped into every artifact manifest.
  std::string hash() const;
};

/// Builds a config from INI text ("[section]" + "key = value" lines) plus
/// "section.key=value" overrides applied on top. [experiment] model/scale
/// pick the recipe defaults before any other key is applied. Seeds of the
/// scenario and training sections follow experiment.seed unless given.
/// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& ini_text, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  const std::vector<std::string>& overrides = {});

/// Artifact locations inside one experiment directory.
struct ExperimentPaths {
  std::filesystem::path root;

  std::filesystem::path config() const { return root / "config.json"; }
  std::filesystem::path iq(const std::string& split) const { return root / "iq" / split; }
  std::filesystem::path dataset(const std::string& split) const { return root / "spectrograms" / (split + ".jwds"); }
  std::filesystem::path checkpoint() const { return root / "model.ckpt"; }
  std::filesystem::path loss_trace() const { return root / "loss_trace.csv"; }
  std::filesystem::path train_summary() const { return root / "train_summary.json"; }
  std::filesystem::path sweep() const { return root / "sweep.csv"; }
  std::filesystem::path scores() const { return root / "scores.csv"; }
  std::filesystem::path eval_summary() const { return root / "eval_summary.json"; }
  std::filesystem::path latency() const { return root / "latency.csv"; }
  std::filesystem::path bench_summary() const { return root / "bench_summary.json"; }
};

inline const std::vector<std::string> kSplits{"train", "val", "test"};

/// IQ corpora for every split under iq/, plus config.json.
void run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out, bool force = false);

/// iq/<split> -> spectrograms/<split>.jwds (linear PSD stack, then -ln(x+eps)).
void run_spectrogram(const ExperimentConfig& cfg, const std::filesystem::path& out, bool force = false);

/// spectrograms/{train,val} -> model.ckpt, loss_trace.csv, train_summary.json.
TrainResult run_train(const ExperimentConfig& cfg, const std::filesystem::path& out, bool force = false);

struct EvalOptions {
  /// When set, also reports tau = max validation score * margin.
  std::optional<double> calibrate_margin;
};

/// model.ckpt + spectrograms/test -> sweep.csv, scores.csv, eval_summary.json.
/// Returns the summary.
nlohmann::json run_eval(const ExperimentConfig& cfg, const std::filesystem::path& out, bool force = false,
                        const EvalOptions& opts = {});

struct BenchOptions {
  std::size_t trials = 1000;
  std::size_t warmup = 10;
  bool cycle = false;
  std::optional<double> threshold;
  std::optional<std::filesystem::path> source;      // defaults to iq/test
  std::optional<std::filesystem::path> checkpoint;  // defaults to model.ckpt
};

/// Timed load -> spectrogram -> score -> decide over the IQ source;
/// latency.csv + bench_summary.json.
LatencyReport run_bench(const ExperimentConfig& cfg, const std::filesystem::path& out, bool force = false,
                        const BenchOptions& opts = {});

/// Layer table of a checkpoint.
std::string run_describe(const std::filesystem::path& checkpoint);

}  // namespace jamwatch
