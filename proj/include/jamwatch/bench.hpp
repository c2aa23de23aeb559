#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jamwatch/detector.hpp"
#include "jamwatch/iq_io.hpp"
#include "jamwatch/nn/network.hpp"

namespace jamwatch {

struct LatencySample {
  std::size_t trial = 0;
  double elapsed_ms = 0;
};

struct CdfPoint {
  double elapsed_ms = 0;
  double probability = 0;  // k / trials
};

struct LatencyReport {
  std::vector<LatencySample> samples;  // trial order
  std::vector<CdfPoint> cdf;           // ascending, last point 1.0
  std::size_t warmup = 0;              // leading trials left out of the percentiles
  double warmup_mean_ms = 0;
  double p50 = 0, p95 = 0, p99 = 0;
  std::size_t detections = 0;  // trials decided as jammed
};

/// Source of raw IQ data. `load()` is part of the timed region: for a file
/// source it reads the slice from disk.
class IqSource {
 public:
  virtual ~IqSource() = default;
  virtual std::optional<IQFrame> load() = 0;
};

/// Frames of an on-disk corpus in order; with `cycle`, wraps around instead
/// of running dry.
class CorpusFileSource : public IqSource {
 public:
  explicit CorpusFileSource(const std::filesystem::path& dir, bool cycle = false);
  std::optional<IQFrame> load() override;

 private:
  IqCorpusReader reader_;
  bool cycle_;
  std::size_t next_ = 0;
};

class MemorySource : public IqSource {
 public:
  explicit MemorySource(std::vector<IQFrame> frames) : frames_(std::move(frames)) {}
  std::optional<IQFrame> load() override;

 private:
  std::vector<IQFrame> frames_;
  std::size_t next_ = 0;
};

/// Steps between raw IQ and a decision.
struct PipelineSpec {
  std::size_t window = 1024;
  std::size_t rows = 100;
  double epsilon = 1e-21;
  double threshold = 0;
  ScoreKind score_kind = ScoreKind::ReconstructionError;
};

/// Thrown when the source runs dry; carries the trials completed so far.
class SourceExhausted : public SourceError {
 public:
  SourceExhausted(const std::string& what, LatencyReport partial)
      : SourceError(what), partial_(std::move(partial)) {}
  const LatencyReport& partial() const { return partial_; }

 private:
  LatencyReport partial_;
};

/// Single-threaded end-to-end timing of load -> spectrogram -> network ->
/// threshold comparison, one frame per trial, on a monotonic clock.
LatencyReport time_pipeline(const nn::Network<float>& model, IqSource& source, const PipelineSpec& spec,
                            std::size_t trials = 1000, std::size_t warmup = 10);

/// Percentiles and CDF over `samples`; the first `warmup` trials only feed
/// warmup_mean_ms.
LatencyReport summarize(std::vector<LatencySample> samples, std::size_t warmup);

/// "trial,elapsed_ms"
std::string latency_csv(const LatencyReport& r);

}  // namespace jamwatch
