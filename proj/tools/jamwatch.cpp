#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jamwatch/error.hpp"
#include "jamwatch/experiment.hpp"

namespace fs = std::filesystem;
using namespace jamwatch;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::string model;
  std::string scale;
  bool force = false;
};

void add_common(CLI::App* app, Common& c, bool with_model) {
  app->add_option("-c,--config", c.config, "INI config file (default: <out>/config.json if present)");
  app->add_option("-s,--set", c.sets, "Override as section.key=value (repeatable)");
  app->add_option("-o,--out", c.out, "Experiment directory (env JAMWATCH_OUT)");
  app->add_flag("-f,--force", c.force, "Overwrite existing outputs");
  if (with_model) {
    app->add_option("--model", c.model, "cae | cnn");
    app->add_option("--scale", c.scale, "full | desk");
  }
}

fs::path resolve_out(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("JAMWATCH_OUT"); env && *env) return env;
  throw ArgumentError("out: no experiment directory (pass --out or set JAMWATCH_OUT)");
}

ExperimentConfig resolve_config(const Common& c, const fs::path& out, bool fresh) {
  std::vector<std::string> overrides = c.sets;
  if (!c.model.empty()) overrides.push_back("experiment.model=" + c.model);
  if (!c.scale.empty()) overrides.push_back("experiment.scale=" + c.scale);
  if (!c.config.empty()) return load_config_file(c.config, overrides);
  const fs::path echo = ExperimentPaths{out}.config();
  if (!fresh && fs::exists(echo)) return load_config_file(echo, overrides);
  return parse_config("", overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrogram-based jamming detection experiments"};
  app.require_subcommand(1);

  Common sim_c, spec_c, train_c, eval_c, bench_c;
  auto* sim = app.add_subcommand("simulate", "Generate the IQ corpora of every split");
  add_common(sim, sim_c, true);
  std::string layout;
  sim->add_option("--layout", layout, "per-frame | concatenated");

  auto* spec = app.add_subcommand("spectrogram", "Turn IQ corpora into spectrogram datasets");
  add_common(spec, spec_c, false);

  auto* tr = app.add_subcommand("train", "Train the configured model");
  add_common(tr, train_c, true);

  auto* ev = app.add_subcommand("eval", "Score the test split and sweep the threshold");
  add_common(ev, eval_c, false);
  std::optional<double> margin;
  ev->add_option("--calibrate-margin", margin, "Also report tau = max validation score * margin");

  auto* be = app.add_subcommand("bench", "Time load -> spectrogram -> score -> decide");
  add_common(be, bench_c, false);
  BenchOptions bopts;
  std::string source, checkpoint;
  be->add_option("--trials", bopts.trials, "Timed trials")->capture_default_str();
  be->add_option("--warmup", bopts.warmup, "Leading trials excluded from percentiles")->capture_default_str();
  be->add_flag("--cycle", bopts.cycle, "Wrap around the IQ source instead of stopping");
  be->add_option("--tau", bopts.threshold, "Decision threshold (default: eval suggestion)");
  be->add_option("--source", source, "IQ corpus directory (default: <out>/iq/test)");
  be->add_option("--checkpoint", checkpoint, "Checkpoint (default: <out>/model.ckpt)");

  auto* de = app.add_subcommand("describe", "Print the layer table of a checkpoint");
  std::string describe_path;
  de->add_option("checkpoint", describe_path, "Checkpoint file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: argument: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sim) {
      const fs::path out = resolve_out(sim_c);
      if (!layout.empty()) sim_c.sets.push_back("experiment.layout=" + layout);
      const auto cfg = resolve_config(sim_c, out, true);
      run_simulate(cfg, out, sim_c.force);
      std::printf("simulate: %zu frames -> %s (config %s)\n", cfg.splits.total(), out.c_str(), cfg.hash().c_str());
    } else if (*spec) {
      const fs::path out = resolve_out(spec_c);
      const auto cfg = resolve_config(spec_c, out, false);
      run_spectrogram(cfg, out, spec_c.force);
      std::printf("spectrogram: %s\n", (out / "spectrograms").c_str());
    } else if (*tr) {
      const fs::path out = resolve_out(train_c);
      const auto cfg = resolve_config(train_c, out, false);
      const auto r = run_train(cfg, out, train_c.force);
      std::printf("train: best epoch %d of %d, val loss %.6g\n", r.best_epoch, r.stopped_epoch, r.best_val_loss);
    } else if (*ev) {
      const fs::path out = resolve_out(eval_c);
      const auto cfg = resolve_config(eval_c, out, false);
      const auto s = run_eval(cfg, out, eval_c.force, EvalOptions{margin});
      std::cout << s.dump(2) << "\n";
    } else if (*be) {
      const fs::path out = resolve_out(bench_c);
      const auto cfg = resolve_config(bench_c, out, false);
      if (!source.empty()) bopts.source = source;
      if (!checkpoint.empty()) bopts.checkpoint = checkpoint;
      const auto r = run_bench(cfg, out, bench_c.force, bopts);
      std::printf("bench: %zu trials, p50 %.3f ms, p95 %.3f ms, p99 %.3f ms\n", r.samples.size(), r.p50, r.p95,
                  r.p99);
    } else if (*de) {
      std::cout << run_describe(describe_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
