// End-to-end acceptance run. One line per criterion:
//   AC<n> PASS|FAIL <name>: <measured values>
// Exit status is nonzero if any criterion fails. Pass criterion numbers as
// arguments to run a subset, e.g. `acceptance 1 2 6`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "jamwatch/bench.hpp"
#include "jamwatch/experiment.hpp"
#include "jamwatch/models.hpp"
#include "jamwatch/nn/checkpoint.hpp"
#include "jamwatch/spectrogram.hpp"
#include "oracles.hpp"

using namespace jamwatch;
namespace fs = std::filesystem;

namespace {

// Tolerances and limits fixed by the acceptance contract.
constexpr double kArchSeconds = 1.0;
constexpr double kPsdRelTol = 1e-9;
constexpr double kParsevalRelTol = 1e-6;
constexpr double kPsdSeconds = 10.0;
constexpr double kGradRelTol = 1e-4;
constexpr double kGradSeconds = 60.0;
constexpr double kDeskSeconds = 15 * 60.0;
constexpr double kMinScoreRatio = 10.0;
constexpr double kMinAccuracy = 0.99;
constexpr double kClassifierTau = 0.5;
constexpr int kSweepSets = 1000;
constexpr std::size_t kBenchTrials = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path scratch_root() {
  static const fs::path root = [] {
    auto p = fs::temp_directory_path() / ("jamwatch_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void run_pipeline(const ExperimentConfig& cfg, const fs::path& dir) {
  run_simulate(cfg, dir);
  run_spectrogram(cfg, dir);
  run_train(cfg, dir);
  run_eval(cfg, dir);
}

// Scores of the test split, recomputed from the checkpoint rather than read
// back from the eval summary.
struct TestScores {
  std::vector<double> trusted, jammed;
};

TestScores rescore(const fs::path& dir) {
  const auto ck = nn::load_checkpoint(ExperimentPaths{dir}.checkpoint());
  const ScoreKind kind = score_kind(objective_for(ck.net));
  TestScores s;
  for (const auto& x : read_dataset(ExperimentPaths{dir}.dataset("test")))
    (is_jammed(*x.label) ? s.jammed : s.trusted).push_back(score(ck.net, x, kind));
  return s;
}

double mean(const std::vector<double>& v) {
  double a = 0;
  for (double x : v) a += x;
  return a / static_cast<double>(v.size());
}

// ------------------------------------------------------------------ AC1

Outcome architecture() {
  const auto t0 = Clock::now();
  auto counts = [](const nn::Network<float>& net) {
    std::vector<nn::Index> out;
    for (std::size_t i = 0; i < net.size(); ++i)
      if (nn::has_params(net.layers()[i])) out.push_back(net.param_count(i));
    return out;
  };
  auto shapes = [](const nn::Network<float>& net) {
    std::vector<nn::Shape> out;
    for (std::size_t i = 0; i < net.size(); ++i)
      if (!std::holds_alternative<nn::Activation>(net.layers()[i])) out.push_back(net.output_shape(i));
    return out;
  };
  using nn::Shape;
  const auto cae = build_cae(100, 1024);
  const auto cnn = build_cnn(100, 1024);
  const bool cae_ok =
      counts(cae) == std::vector<nn::Index>{320, 18496, 709640, 798336, 73856, 73792, 577} &&
      nn::param_count(cae) == 1675017 &&
      shapes(cae) == std::vector<Shape>{Shape{49, 511, 32}, Shape{24, 255, 32}, Shape{22, 253, 64},
                                        Shape{11, 126, 64}, Shape{88704},       Shape{8},
                                        Shape{88704},       Shape{11, 126, 64}, Shape{23, 253, 128},
                                        Shape{47, 507, 64}, Shape{50, 512, 64}, Shape{100, 1024, 1}};
  const bool cnn_ok = counts(cnn) == std::vector<nn::Index>{320, 18496, 73856, 507920, 136, 9} &&
                      nn::param_count(cnn) == 600737 &&
                      shapes(cnn) == std::vector<Shape>{Shape{49, 511, 32}, Shape{24, 255, 32}, Shape{22, 253, 64},
                                                        Shape{11, 126, 64}, Shape{9, 124, 128}, Shape{4, 62, 128},
                                                        Shape{31744},       Shape{16},          Shape{8},
                                                        Shape{1}};
  const double secs = seconds_since(t0);
  return {cae_ok && cnn_ok && secs < kArchSeconds,
          fmt("cae %ld params (%s), cnn %ld params (%s), %.3f s (limit %.0f s)", static_cast<long>(nn::param_count(cae)),
              cae_ok ? "match" : "MISMATCH", static_cast<long>(nn::param_count(cnn)), cnn_ok ? "match" : "MISMATCH",
              secs, kArchSeconds)};
}

// ------------------------------------------------------------------ AC2

Outcome psd() {
  const auto t0 = Clock::now();
  const double fs = 120e6;
  std::mt19937_64 rng(2024);
  std::normal_distribution<float> g;
  double worst_dft = 0, worst_parseval = 0;
  for (int w = 0; w < 100; ++w) {
    std::vector<cfloat> win(1024);
    for (auto& v : win) v = {g(rng), g(rng)};
    const auto ref = oracle::psd(win, fs);
    const auto p = compute_psd(win, fs);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      const double rel = std::abs(p.values[static_cast<Eigen::Index>(k)] - ref[k]) / ref[k];
      worst_dft = std::max(worst_dft, rel);
    }
    double energy = 0;
    for (auto v : win) energy += std::norm(std::complex<double>(v));
    worst_parseval = std::max(worst_parseval, std::abs(p.values.sum() - energy / fs) / (energy / fs));
  }
  const double secs = seconds_since(t0);
  return {worst_dft <= kPsdRelTol && worst_parseval <= kParsevalRelTol && secs < kPsdSeconds,
          fmt("max rel err vs DFT %.2e (tol %.0e), Parseval %.2e (tol %.0e), %.2f s", worst_dft, kPsdRelTol,
              worst_parseval, kParsevalRelTol, secs)};
}

// ------------------------------------------------------------------ AC3

Outcome gradients() {
  using namespace nn;
  const auto t0 = Clock::now();
  struct Case {
    const char* name;
    Shape in;
    std::vector<LayerSpec> layers;
  };
  const std::vector<Case> cases{
      {"Conv2D", Shape{9, 11, 2}, {Conv2D{3, 3, 2, 0}}},
      {"Conv2D(pad)", Shape{6, 7, 3}, {Conv2D{2, 3, 1, 1}}},
      {"MaxPool2D", Shape{6, 9, 2}, {MaxPool2D{}}},
      {"ConvT2D", Shape{3, 4, 3}, {ConvT2D{2, 3, 2, 0, 0}}},
      {"ConvT2D(pad,outpad)", Shape{4, 5, 2}, {ConvT2D{3, 3, 2, 1, 1}}},
      {"ZeroPad2D", Shape{3, 5, 2}, {ZeroPad2D{0, 3, 0, 5}}},
      {"Dense", Shape{12}, {Dense{5}}},
      {"Flatten", Shape{2, 3, 2}, {Flatten{}}},
      {"Reshape", Shape{12}, {Reshape{Shape{2, 3, 2}}}},
      {"ReLU", Shape{5, 5, 2}, {Activation{ActivationKind::ReLU}}},
      {"Sigmoid", Shape{10}, {Activation{ActivationKind::Sigmoid}}},
      {"Linear", Shape{10}, {Activation{ActivationKind::Linear}}},
      {"mini-CAE", Shape{8, 8, 1},
       {Conv2D{2, 3, 2, 0}, Activation{ActivationKind::Sigmoid}, Flatten{}, Dense{3},
        Activation{ActivationKind::Sigmoid}, Dense{18}, Reshape{Shape{3, 3, 2}}, ConvT2D{1, 3, 2, 0, 0},
        ZeroPad2D{0, 1, 0, 1}}},
  };
  double worst = 0;
  std::string worst_name;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Network<double> net(cases[i].in, cases[i].layers, 100 + i);
    for (auto& p : net.mutable_params()) p.bias.setRandom();
    const auto r = oracle::gradient_check(net, oracle::random_tensor(cases[i].in, 200 + i), 300 + i);
    checked += r.checked;
    const double w = std::max(r.worst_param, r.worst_input);
    if (w >= worst) worst = w, worst_name = cases[i].name;
  }
  const double secs = seconds_since(t0);
  return {worst < kGradRelTol && secs < kGradSeconds,
          fmt("%zu layer configs, %zu entries, worst rel err %.2e in %s (tol %.0e), %.2f s", cases.size(), checked,
              worst, worst_name.c_str(), kGradRelTol, secs)};
}

// ------------------------------------------------------------------ AC4

Outcome desk_autoencoder() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (JammerKind kind : {JammerKind::Gaussian, JammerKind::Uniform}) {
    auto cfg = ExperimentConfig::defaults(ModelKind::CAE, ModelScale::Desk, 1);
    cfg.scenario.jammer_kind = kind;
    const fs::path dir = scratch_root() / ("cae_" + std::string(to_string(kind)));
    run_pipeline(cfg, dir);
    const auto summary = nlohmann::json::parse(slurp(ExperimentPaths{dir}.train_summary()));
    const bool converged = summary.at("early_stopped").get<bool>();
    const auto s = rescore(dir);
    const auto interval = separating_interval(s.trusted, s.jammed);
    const SweepCurve curve = sweep(s.trusted, s.jammed, ScoreKind::ReconstructionError);
    const auto grid_interval = zero_error_interval(curve);
    const double ratio = mean(s.jammed) / mean(s.trusted);
    const bool ok = converged && interval && grid_interval && ratio >= kMinScoreRatio;
    pass = pass && ok;
    detail += fmt("%s: stop@%d best@%d, ratio %.2f, %s; ", std::string(to_string(kind)).c_str(),
                  summary.at("stopped_epoch").get<int>(), summary.at("best_epoch").get<int>(), ratio,
                  interval ? fmt("zero-error tau in (%.4g, %.4g]", interval->lo, interval->hi).c_str()
                           : "no zero-error tau");
  }
  const double secs = seconds_since(t0);
  return {pass && secs < kDeskSeconds,
          detail + fmt("ratio limit %.0f, %.0f s (limit %.0f s)", kMinScoreRatio, secs, kDeskSeconds)};
}

// ------------------------------------------------------------------ AC5

const fs::path& classifier_dir() {
  static const fs::path d = scratch_root() / "cnn_a";
  return d;
}

Outcome desk_classifier() {
  const auto t0 = Clock::now();
  const auto cfg = ExperimentConfig::defaults(ModelKind::CNN, ModelScale::Desk, 1);
  run_pipeline(cfg, classifier_dir());
  const auto s = rescore(classifier_dir());
  std::size_t correct = 0;
  for (double p : s.trusted) correct += decide(p, kClassifierTau) == Decision::H0;
  for (double p : s.jammed) correct += decide(p, kClassifierTau) == Decision::H1;
  const double accuracy = static_cast<double>(correct) / static_cast<double>(s.trusted.size() + s.jammed.size());
  const auto interval = zero_error_interval(sweep(s.trusted, s.jammed, ScoreKind::ClassProbability));
  const double secs = seconds_since(t0);
  return {accuracy >= kMinAccuracy && interval && secs < kDeskSeconds,
          fmt("test accuracy %.4f at tau %.1f (min %.2f), %s, %zu train / %zu test, %.0f s", accuracy,
              kClassifierTau, kMinAccuracy,
              interval ? fmt("zero-error grid interval [%.4g, %.4g]", interval->lo, interval->hi).c_str()
                       : "no zero-error interval",
              cfg.splits.train.at(Label::EmptyChannel) * 3, s.trusted.size() + s.jammed.size(), secs)};
}

// ------------------------------------------------------------------ AC6

Outcome sweep_properties() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> size(1, 80);
  std::uniform_real_distribution<double> shift(-2, 2);
  std::normal_distribution<double> g;
  std::bernoulli_distribution coarse(0.3);
  int monotone_failures = 0, count_failures = 0;
  long points = 0;
  for (int t = 0; t < kSweepSets; ++t) {
    std::vector<double> h0(static_cast<std::size_t>(size(rng))), h1(static_cast<std::size_t>(size(rng)));
    const double d = shift(rng);
    const bool ties = coarse(rng);
    auto draw = [&](double mu) { return ties ? std::round(g(rng) + mu) : g(rng) + mu; };
    for (auto& v : h0) v = draw(0);
    for (auto& v : h1) v = draw(d);
    const ScoreKind kind = t % 2 ? ScoreKind::ClassProbability : ScoreKind::ReconstructionError;
    if (kind == ScoreKind::ClassProbability) {
      for (auto* set : {&h0, &h1})
        for (auto& v : *set) v = 1.0 / (1.0 + std::exp(-v));
    } else {
      for (auto* set : {&h0, &h1})
        for (auto& v : *set) v = std::exp(v);
    }
    const auto curve = sweep(h0, h1, kind);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const auto& p = curve.points[i];
      const auto ref = oracle::count(h0, h1, p.tau);
      count_failures += p.p_fa != ref.p_fa || p.p_md != ref.p_md;
      if (i > 0) {
        const auto& q = curve.points[i - 1];
        monotone_failures += p.p_fa > q.p_fa || p.p_md < q.p_md;
      }
      ++points;
    }
  }
  return {monotone_failures == 0 && count_failures == 0,
          fmt("%d score sets, %ld thresholds, %d monotonicity violations, %d brute-force mismatches", kSweepSets,
              points, monotone_failures, count_failures)};
}

// ------------------------------------------------------------------ AC7

Outcome latency() {
  // Full-size scene; a small corpus replayed cyclically from disk keeps the
  // file read inside every timed trial.
  const fs::path dir = scratch_root() / "bench_iq";
  const ScenarioConfig scene;
  IqCorpusWriter w(dir, scene, 7, IqLayout::Concatenated);
  for (const auto& [label, seed] :
       corpus_plan({{Label::EmptyChannel, 4}, {Label::ActiveChannel, 4}, {Label::Jammed, 8}}, 7))
    w.append(gen_frame(scene, label, seed));
  w.finish();

  bool pass = true;
  std::string detail;
  struct Model {
    const char* name;
    nn::Network<float> net;
    ScoreKind kind;
    double tau;
    double reference_ms;
  };
  const std::vector<Model> models{{"cae", build_cae(100, 1024, 1), ScoreKind::ReconstructionError, 1e5, 48.0},
                                  {"cnn", build_cnn(100, 1024, 1), ScoreKind::ClassProbability, 0.5, 46.0}};
  for (const auto& m : models) {
    CorpusFileSource src(dir, true);
    const auto r = time_pipeline(m.net, src, PipelineSpec{1024, 100, kNegLogEpsilon, m.tau, m.kind}, kBenchTrials, 10);
    bool valid = r.samples.size() == kBenchTrials && !r.cdf.empty() && r.cdf.back().probability == 1.0 &&
                 std::isfinite(r.p95) && r.p95 > 0;
    for (std::size_t i = 1; i < r.cdf.size(); ++i)
      valid = valid && r.cdf[i].elapsed_ms >= r.cdf[i - 1].elapsed_ms &&
              r.cdf[i].probability > r.cdf[i - 1].probability;
    pass = pass && valid;
    detail += fmt("%s: %zu trials, p50 %.2f ms, p95 %.2f ms (reference %.0f ms, not asserted), CDF %s; ", m.name,
                  r.samples.size(), r.p50, r.p95, m.reference_ms, valid ? "valid" : "INVALID");
  }
  return {pass, detail};
}

// ------------------------------------------------------------------ AC8

Outcome determinism() {
  const auto cfg = ExperimentConfig::defaults(ModelKind::CNN, ModelScale::Desk, 1);
  if (!fs::exists(classifier_dir() / "sweep.csv")) run_pipeline(cfg, classifier_dir());
  const fs::path b = scratch_root() / "cnn_b";
  run_pipeline(cfg, b);
  std::vector<std::string> files;
  for (const auto& split : kSplits) files.push_back("spectrograms/" + split + ".jwds");
  for (const char* f : {"loss_trace.csv", "sweep.csv", "scores.csv", "model.ckpt", "eval_summary.json"})
    files.emplace_back(f);
  std::string differing;
  for (const auto& f : files)
    if (slurp(classifier_dir() / f) != slurp(b / f) || slurp(b / f).empty()) differing += " " + f;
  return {differing.empty(), differing.empty() ? fmt("%zu artifacts byte-identical across two runs", files.size())
                                               : "differing:" + differing};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"architecture fidelity", architecture},
      {"PSD correctness", psd},
      {"gradient correctness", gradients},
      {"desk unsupervised reproduction", desk_autoencoder},
      {"desk supervised reproduction", desk_classifier},
      {"sweep properties", sweep_properties},
      {"latency benchmark", latency},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("AC%d %s %s: %s\n", n, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(scratch_root());
  return failures == 0 ? 0 : 1;
}
