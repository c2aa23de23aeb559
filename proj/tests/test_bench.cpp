#include <doctest.h>

#include "jamwatch/bench.hpp"
#include "jamwatch/models.hpp"

using namespace jamwatch;

namespace {

std::vector<LatencySample> samples(std::initializer_list<double> ms) {
  std::vector<LatencySample> out;
  std::size_t i = 0;
  for (double v : ms) out.push_back({i++, v});
  return out;
}

}  // namespace

TEST_CASE("summary: nearest-rank percentiles after warm-up, CDF over all trials") {
  const auto r = summarize(samples({100, 50, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 2);
  CHECK(r.warmup == 2);
  CHECK(r.warmup_mean_ms == 75.0);
  CHECK(r.p50 == 5.0);
  CHECK(r.p95 == 10.0);
  CHECK(r.p99 == 10.0);
  REQUIRE(r.cdf.size() == 12);
  CHECK(r.cdf.back().probability == 1.0);
  CHECK(r.cdf.back().elapsed_ms == 100.0);
  for (std::size_t i = 1; i < r.cdf.size(); ++i) {
    CHECK(r.cdf[i].elapsed_ms >= r.cdf[i - 1].elapsed_ms);
    CHECK(r.cdf[i].probability > r.cdf[i - 1].probability);
  }
}

TEST_CASE("timed pipeline over an in-memory source") {
  const auto cfg = ScenarioConfig::desk();
  std::vector<IQFrame> frames;
  for (int i = 0; i < 30; ++i) frames.push_back(gen_frame(cfg, Label::Jammed, derive_seed(1, i)));
  MemorySource src(frames);
  const auto net = build_scaled(ModelKind::CNN, 32, 128, 1);
  PipelineSpec spec{128, 32, 1e-21, 0.0, ScoreKind::ClassProbability};
  const auto r = time_pipeline(net, src, spec, 20, 5);
  CHECK(r.samples.size() == 20);
  CHECK(r.detections == 20);  // every probability is >= 0
  CHECK(r.cdf.back().probability == 1.0);
  CHECK(r.p50 > 0);
  CHECK(r.p50 <= r.p95);
  CHECK(r.p95 <= r.p99);
  CHECK(latency_csv(r).rfind("trial,elapsed_ms\n", 0) == 0);
}

TEST_CASE("exhausted source reports the trials completed") {
  const auto cfg = ScenarioConfig::desk();
  MemorySource src({gen_frame(cfg, Label::EmptyChannel, 1), gen_frame(cfg, Label::EmptyChannel, 2)});
  const auto net = build_scaled(ModelKind::CNN, 32, 128, 1);
  try {
    time_pipeline(net, src, PipelineSpec{128, 32, 1e-21, 0.5, ScoreKind::ClassProbability}, 5, 0);
    FAIL("expected SourceExhausted");
  } catch (const SourceExhausted& e) {
    CHECK(e.partial().samples.size() == 2);
  }
}
