#include "jamwatch/iq_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jamwatch/error.hpp"

namespace jamwatch {

std::string_view to_string(JammerKind k) {
  return k == JammerKind::Uniform ? "uniform" : "gaussian";
}

JammerKind parse_jammer_kind(std::string_view s) {
  if (s == "uniform") return JammerKind::Uniform;
  if (s == "gaussian") return JammerKind::Gaussian;
  throw ConfigError("jammer_kind: expected uniform|gaussian, got '" + std::string(s) + "'");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ScenarioConfig ScenarioConfig::desk() {
  ScenarioConfig c;
  c.frame_len = 4096;
  c.n_subcarriers = 64;
  c.beacon_period = 1024;
  c.beacon_len = 128;
  c.slot_len = 512;
  return c;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
  };
  if (!(sampling_rate > 0)) fail("sampling_rate", "must be > 0");
  if (!(noise_floor_power > 0)) fail("noise_floor_power", "must be > 0");
  if (!(signal_power > 0)) fail("signal_power", "must be > 0");
  if (!(jammer_power > 0)) fail("jammer_power", "must be > 0");
  if (!(burst_duty >= 0 && burst_duty <= 1)) fail("burst_duty", "must lie in [0,1]");
  if (!(active_bandwidth > 0 && active_bandwidth <= sampling_rate))
    fail("active_bandwidth", "must lie in (0, sampling_rate]");
  if (!is_power_of_two(n_subcarriers)) fail("n_subcarriers", "must be a power of two");
  if (beacon_len < n_subcarriers) fail("beacon_len", "must be >= n_subcarriers");
  if (slot_len < n_subcarriers) fail("slot_len", "must be >= n_subcarriers");
  if (beacon_period < beacon_len) fail("beacon_period", "must be >= beacon_len");
  if (frame_len < beacon_period)
    fail("frame_len", "too small for one beacon period (" + std::to_string(frame_len) + " < " +
                          std::to_string(beacon_period) + ")");
}

void to_json(nlohmann::json& j, const ScenarioConfig& c) {
  j = nlohmann::json{{"sampling_rate", c.sampling_rate},
                     {"frame_len", c.frame_len},
                     {"noise_floor_power", c.noise_floor_power},
                     {"signal_power", c.signal_power},
                     {"jammer_power", c.jammer_power},
                     {"jammer_kind", std::string(to_string(c.jammer_kind))},
                     {"n_subcarriers", c.n_subcarriers},
                     {"active_bandwidth", c.active_bandwidth},
                     {"beacon_period", c.beacon_period},
                     {"beacon_len", c.beacon_len},
                     {"slot_len", c.slot_len},
                     {"burst_duty", c.burst_duty},
                     {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, ScenarioConfig& c) {
  j.at("sampling_rate").get_to(c.sampling_rate);
  j.at("frame_len").get_to(c.frame_len);
  j.at("noise_floor_power").get_to(c.noise_floor_power);
  j.at("signal_power").get_to(c.signal_power);
  j.at("jammer_power").get_to(c.jammer_power);
  c.jammer_kind = parse_jammer_kind(j.at("jammer_kind").get<std::string>());
  j.at("n_subcarriers").get_to(c.n_subcarriers);
  j.at("active_bandwidth").get_to(c.active_bandwidth);
  j.at("beacon_period").get_to(c.beacon_period);
  j.at("beacon_len").get_to(c.beacon_len);
  j.at("slot_len").get_to(c.slot_len);
  j.at("burst_duty").get_to(c.burst_duty);
  j.at("seed").get_to(c.seed);
}

std::vector<cdouble> synth_noise(std::size_t n, double power, JammerKind kind, Rng& rng) {
  std::vector<cdouble> out(n);
  if (power <= 0) return out;
  if (kind == JammerKind::Gaussian) {
    std::normal_distribution<double> dist(0.0, std::sqrt(power / 2.0));
    for (auto& s : out) {
      const double i = dist(rng);
      s = {i, dist(rng)};
    }
  } else {
    const double a = std::sqrt(3.0 * power / 2.0);
    std::uniform_real_distribution<double> dist(-a, a);
    for (auto& s : out) {
      const double i = dist(rng);
      s = {i, dist(rng)};
    }
  }
  return out;
}

std::vector<cdouble> synth_multicarrier_burst(std::size_t n_subcarriers, std::size_t burst_len,
                                              double power, Rng& rng, double active_fraction) {
  if (!is_power_of_two(n_subcarriers))
    throw ConfigError("n_subcarriers: " + std::to_string(n_subcarriers) +
                      " is not a power of two");
  if (burst_len < n_subcarriers)
    throw ConfigError("burst_len: must be >= n_subcarriers (" + std::to_string(burst_len) +
                      " < " + std::to_string(n_subcarriers) + ")");
  if (!(active_fraction > 0 && active_fraction <= 1))
    throw ConfigError("active_fraction: must lie in (0,1]");

  std::vector<cdouble> out(burst_len);
  if (power <= 0) return out;

  const auto n = static_cast<long>(n_subcarriers);
  const long edge = std::max(1L, static_cast<long>(std::floor(active_fraction * n / 2.0)));
  std::vector<long> active;
  for (long m = -std::min(edge, n / 2); m <= std::min(edge, n / 2 - 1); ++m)
    if (m != 0) active.push_back((m + n) % n);
  if (active.empty()) active.push_back(1 % n);
  const double scale = std::sqrt(power / static_cast<double>(active.size()));

  std::bernoulli_distribution coin(0.5);
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<cdouble> block(n_subcarriers);
  for (std::size_t start = 0; start < burst_len; start += n_subcarriers) {
    std::fill(block.begin(), block.end(), cdouble{});
    for (long m : active) {
      const double re = coin(rng) ? h : -h;
      const double im = coin(rng) ? h : -h;
      block[static_cast<std::size_t>(m)] = {re, im};
    }
    fft_inplace(block, /*inverse=*/true);
    const std::size_t len = std::min(n_subcarriers, burst_len - start);
    for (std::size_t k = 0; k < len; ++k) out[start + k] = scale * block[k];
  }
  return out;
}

namespace {

void add_at(std::vector<cdouble>& dst, std::size_t offset, const std::vector<cdouble>& src) {
  for (std::size_t k = 0; k < src.size() && offset + k < dst.size(); ++k) dst[offset + k] += src[k];
}

void add_beacons(std::vector<cdouble>& x, const ScenarioConfig& cfg, std::size_t period,
                 Rng& rng) {
  const double frac = cfg.active_bandwidth / cfg.sampling_rate;
  std::uniform_int_distribution<std::size_t> phase(0, period - 1);
  for (std::size_t pos = phase(rng); pos < x.size(); pos += period)
    add_at(x, pos,
           synth_multicarrier_burst(cfg.n_subcarriers, cfg.beacon_len, cfg.signal_power, rng,
                                    frac));
}

void add_tdd_bursts(std::vector<cdouble>& x, const ScenarioConfig& cfg, Rng& rng) {
  const double frac = cfg.active_bandwidth / cfg.sampling_rate;
  const std::size_t n_slots = (x.size() + cfg.slot_len - 1) / cfg.slot_len;
  const auto n_on = static_cast<std::size_t>(std::lround(cfg.burst_duty * n_slots));
  std::vector<std::size_t> slots(n_slots);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  slots.resize(n_on);
  std::sort(slots.begin(), slots.end());
  for (std::size_t s : slots)
    add_at(x, s * cfg.slot_len,
           synth_multicarrier_burst(cfg.n_subcarriers, cfg.slot_len, cfg.signal_power, rng, frac));
}

}  // namespace

IQFrame gen_frame(const ScenarioConfig& cfg, Label label, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  std::vector<cdouble> x = synth_noise(cfg.frame_len, cfg.noise_floor_power,
                                       JammerKind::Gaussian, rng);
  switch (label) {
    case Label::EmptyChannel:
      add_beacons(x, cfg, cfg.beacon_period, rng);
      break;
    case Label::ActiveChannel:
      add_tdd_bursts(x, cfg, rng);
      break;
    case Label::Jammed: {
      const auto jam = synth_noise(cfg.frame_len, cfg.jammer_power, cfg.jammer_kind, rng);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += jam[k];
      // residual signalling: one beacon every four periods
      add_beacons(x, cfg, 4 * cfg.beacon_period, rng);
      break;
    }
  }

  IQFrame f;
  f.samples.resize(x.size());
  std::transform(x.begin(), x.end(), f.samples.begin(), [](cdouble v) {
    return cfloat(static_cast<float>(v.real()), static_cast<float>(v.imag()));
  });
  f.sampling_rate = cfg.sampling_rate;
  f.label = label;
  f.seed = seed;
  return f;
}

std::vector<std::pair<Label, std::uint64_t>> corpus_plan(const std::map<Label, std::size_t>& counts,
                                                          std::uint64_t seed) {
  std::vector<std::pair<Label, std::uint64_t>> plan;
  std::uint64_t index = 0;
  for (Label l : kAllLabels) {
    const auto it = counts.find(l);
    const std::size_t n = it == counts.end() ? 0 : it->second;
    for (std::size_t k = 0; k < n; ++k, ++index) plan.emplace_back(l, derive_seed(seed, index));
  }
  return plan;
}

Corpus gen_corpus(const ScenarioConfig& cfg, const std::map<Label, std::size_t>& counts,
                  std::uint64_t seed) {
  cfg.validate();
  Corpus c;
  c.manifest.config = cfg;
  c.manifest.seed = seed;
  for (Label l : kAllLabels) {
    const auto it = counts.find(l);
    c.manifest.counts[l] = it == counts.end() ? 0 : it->second;
  }
  for (const auto& [label, s] : corpus_plan(counts, seed)) {
    c.frames.push_back(gen_frame(cfg, label, s));
    c.manifest.frame_seeds.push_back(s);
  }
  return c;
}

double mean_square(std::span<const cfloat> x) {
  double acc = 0.0;
  for (cfloat v : x) acc += std::norm(cdouble(v.real(), v.imag()));
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

double mean_square(std::span<const cdouble> x) {
  double acc = 0.0;
  for (cdouble v : x) acc += std::norm(v);
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

}  // namespace jamwatch
