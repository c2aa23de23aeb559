#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "jamwatch/experiment.hpp"
#include "jamwatch/spectrogram.hpp"

using namespace jamwatch;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("jamwatch_exp_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

const char* kTinyIni = R"(
[experiment]
model = cnn
scale = desk
seed = 7

[splits]
train_empty = 4
train_active = 4
train_jammed = 8
val_empty = 2
val_active = 2
val_jammed = 4
test_empty = 3
test_active = 3
test_jammed = 6

[training]
max_epochs = 3
batch_size = 4
)";

}  // namespace

TEST_CASE("recipe defaults") {
  const auto sup = ExperimentConfig::defaults(ModelKind::CNN, ModelScale::Full);
  CHECK(sup.splits.train.at(Label::EmptyChannel) + sup.splits.train.at(Label::ActiveChannel) +
            sup.splits.train.at(Label::Jammed) ==
        4500);
  CHECK(sup.splits.total() == 4500 + 1800 + 1200);
  const auto uns = ExperimentConfig::defaults(ModelKind::CAE, ModelScale::Full);
  CHECK(uns.splits.train.at(Label::Jammed) == 0);
  CHECK(uns.splits.total() == 6000 + 800 + 800);
  CHECK(uns.splits.test.at(Label::Jammed) == 400);
  const auto desk = ExperimentConfig::defaults(ModelKind::CAE, ModelScale::Desk);
  CHECK(desk.spectrogram.window == 128);
  CHECK(desk.spectrogram.rows == 32);
  CHECK(desk.splits.total() == 600 + 80 + 200);
  CHECK_NOTHROW(desk.validate());
}

TEST_CASE("ini parsing, overrides and errors") {
  const auto c = parse_config(kTinyIni, {"training.lr=0.005", "scenario.jammer_kind=uniform"});
  CHECK(c.model == ModelKind::CNN);
  CHECK(c.scale == ModelScale::Desk);
  CHECK(c.seed == 7);
  CHECK(c.training.lr == 0.005);
  CHECK(c.training.max_epochs == 3);
  CHECK(c.scenario.jammer_kind == JammerKind::Uniform);
  CHECK(c.splits.train.at(Label::Jammed) == 8);
  CHECK(c.scenario.seed == derive_seed(7, 1));

  CHECK_THROWS_WITH_AS(parse_config("[training]\nbogus = 1\n"), doctest::Contains("training.bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[training]\nlr = fast\n"), doctest::Contains("training.lr"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("", {"training.patience=0"}), doctest::Contains("patience"), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"no-equals-sign"}), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nmodel = cae\n[splits]\ntrain_jammed = 3\n"),
                       doctest::Contains("train_jammed"), ConfigError);
}

TEST_CASE("json echo round trip and hash") {
  const auto c = parse_config(kTinyIni);
  const auto back = ExperimentConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.hash() == c.hash());
  CHECK(parse_config(kTinyIni, {"experiment.seed=8"}).hash() != c.hash());
}

TEST_CASE("pipeline is reproducible and refuses to overwrite") {
  const auto cfg = parse_config(kTinyIni);
  const fs::path a = scratch("a"), b = scratch("b");
  for (const auto& dir : {a, b}) {
    run_simulate(cfg, dir);
    run_spectrogram(cfg, dir);
    run_train(cfg, dir);
    run_eval(cfg, dir);
  }
  for (const std::string f : {"spectrograms/train.jwds", "spectrograms/test.jwds", "loss_trace.csv", "sweep.csv",
                              "scores.csv", "eval_summary.json", "model.ckpt", "iq/test/frames.iq"})
    CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);

  CHECK(read_dataset(a / "spectrograms/test.jwds").size() == 12);
  CHECK(slurp(a / "eval_summary.json").find(cfg.hash()) != std::string::npos);
  CHECK(slurp(a / "iq/train/manifest.json").find(cfg.hash()) != std::string::npos);

  CHECK_THROWS_AS(run_simulate(cfg, a), ArgumentError);
  CHECK_THROWS_AS(run_eval(cfg, a), ArgumentError);
  CHECK_NOTHROW(run_eval(cfg, a, true, EvalOptions{1.1}));
  BenchOptions bo;
  bo.trials = 12;
  bo.warmup = 2;
  const auto r = run_bench(cfg, a, false, bo);
  CHECK(r.samples.size() == 12);
  CHECK(run_describe(a / "model.ckpt").find("Dense") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("later stages report missing inputs") {
  const auto cfg = parse_config(kTinyIni);
  const fs::path d = scratch("missing");
  fs::create_directories(d);
  CHECK_THROWS_AS(run_spectrogram(cfg, d), FormatError);
  CHECK_THROWS_AS(run_train(cfg, d), FormatError);
  fs::remove_all(d);
}
