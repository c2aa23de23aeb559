#include "jamwatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "jamwatch/spectrogram.hpp"
#include "jamwatch/training.hpp"

namespace jamwatch {

CorpusFileSource::CorpusFileSource(const std::filesystem::path& dir, bool cycle) : reader_(dir), cycle_(cycle) {
  if (reader_.size() == 0) throw SourceError(dir.string() + ": corpus holds no frames");
}

std::optional<IQFrame> CorpusFileSource::load() {
  if (next_ >= reader_.size()) {
    if (!cycle_) return std::nullopt;
    next_ = 0;
  }
  return reader_.load(next_++);
}

std::optional<IQFrame> MemorySource::load() {
  if (next_ >= frames_.size()) return std::nullopt;
  return frames_[next_++];
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

LatencyReport summarize(std::vector<LatencySample> samples, std::size_t warmup) {
  LatencyReport r;
  r.samples = std::move(samples);
  r.warmup = std::min(warmup, r.samples.size());

  std::vector<double> all;
  for (const auto& s : r.samples) all.push_back(s.elapsed_ms);
  std::vector<double> steady(all.begin() + static_cast<std::ptrdiff_t>(r.warmup), all.end());
  if (r.warmup > 0) {
    double acc = 0;
    for (std::size_t i = 0; i < r.warmup; ++i) acc += all[i];
    r.warmup_mean_ms = acc / static_cast<double>(r.warmup);
  }

  std::sort(all.begin(), all.end());
  for (std::size_t k = 0; k < all.size(); ++k)
    r.cdf.push_back({all[k], static_cast<double>(k + 1) / static_cast<double>(all.size())});

  std::sort(steady.begin(), steady.end());
  r.p50 = percentile(steady, 0.50);
  r.p95 = percentile(steady, 0.95);
  r.p99 = percentile(steady, 0.99);
  return r;
}

LatencyReport time_pipeline(const nn::Network<float>& model, IqSource& source, const PipelineSpec& spec,
                            std::size_t trials, std::size_t warmup) {
  using Clock = std::chrono::steady_clock;
  std::vector<LatencySample> samples;
  samples.reserve(trials);
  std::size_t detections = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto start = Clock::now();
    std::optional<IQFrame> frame = source.load();
    if (!frame) {
      throw SourceExhausted("iq source exhausted after " + std::to_string(t) + " of " + std::to_string(trials) +
                                " trials",
                            summarize(std::move(samples), warmup));
    }
    const Spectrogram x = neg_log(build_spectrogram(*frame, spec.window, spec.rows), spec.epsilon);
    const double s = score(model, x, spec.score_kind);
    if (decide(s, spec.threshold) == Decision::H1) ++detections;
    const auto stop = Clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    samples.push_back({t, std::max(ms, 1e-6)});
  }
  LatencyReport r = summarize(std::move(samples), warmup);
  r.detections = detections;
  return r;
}

std::string latency_csv(const LatencyReport& r) {
  std::string out = "trial,elapsed_ms\n";
  char line[64];
  for (const auto& s : r.samples) {
    std::snprintf(line, sizeof line, "%zu,%.6f\n", s.trial, s.elapsed_ms);
    out += line;
  }
  return out;
}

}  // namespace jamwatch
