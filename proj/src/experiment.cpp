#include "jamwatch/experiment.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "jamwatch/container.hpp"
#include "jamwatch/nn/checkpoint.hpp"
#include "jamwatch/spectrogram.hpp"

namespace jamwatch {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- splits

SplitSpec SplitSpec::unsupervised(ModelScale scale) {
  const std::size_t k = scale == ModelScale::Full ? 10 : 1;
  SplitSpec s;
  s.train = {{Label::EmptyChannel, 300 * k}, {Label::ActiveChannel, 300 * k}, {Label::Jammed, 0}};
  s.val = {{Label::EmptyChannel, 40 * k}, {Label::ActiveChannel, 40 * k}, {Label::Jammed, 0}};
  // Half jammed, half trusted; the trusted half split evenly between cases.
  const std::size_t test_total = scale == ModelScale::Full ? 800 : 200;
  s.test = {{Label::EmptyChannel, test_total / 4}, {Label::ActiveChannel, test_total / 4},
            {Label::Jammed, test_total / 2}};
  return s;
}

SplitSpec SplitSpec::supervised(ModelScale scale) {
  const std::size_t k = scale == ModelScale::Full ? 10 : 1;
  auto even = [](std::size_t n) {
    return LabelCounts{{Label::EmptyChannel, n}, {Label::ActiveChannel, n}, {Label::Jammed, n}};
  };
  return {even(150 * k), even(60 * k), even(40 * k)};
}

void SplitSpec::validate(ModelKind kind) const {
  auto get = [](const LabelCounts& c, Label l) {
    const auto it = c.find(l);
    return it == c.end() ? std::size_t{0} : it->second;
  };
  auto total = [&](const LabelCounts& c) {
    return get(c, Label::EmptyChannel) + get(c, Label::ActiveChannel) + get(c, Label::Jammed);
  };
  if (total(train) == 0) throw ConfigError("splits.train: no samples");
  if (total(val) == 0) throw ConfigError("splits.val: no samples");
  if (total(test) == 0) throw ConfigError("splits.test: no samples");
  if (kind == ModelKind::CAE) {
    if (get(train, Label::Jammed) != 0) throw ConfigError("splits.train_jammed: must be 0 for the autoencoder");
    if (get(val, Label::Jammed) != 0) throw ConfigError("splits.val_jammed: must be 0 for the autoencoder");
  }
}

std::size_t SplitSpec::total() const {
  std::size_t n = 0;
  for (const auto* c : {&train, &val, &test})
    for (const auto& [l, k] : *c) n += k;
  return n;
}

// ---------------------------------------------------------------- config

ExperimentConfig ExperimentConfig::defaults(ModelKind model, ModelScale scale, std::uint64_t seed) {
  ExperimentConfig c;
  c.seed = seed;
  c.model = model;
  c.scale = scale;
  c.scenario = scale == ModelScale::Full ? ScenarioConfig{} : ScenarioConfig::desk();
  c.scenario.seed = derive_seed(seed, 1);
  if (scale == ModelScale::Desk) c.spectrogram = {128, 32, kNegLogEpsilon};
  c.splits = model == ModelKind::CAE ? SplitSpec::unsupervised(scale) : SplitSpec::supervised(scale);
  c.training.seed = derive_seed(seed, 2);
  if (scale == ModelScale::Desk && model == ModelKind::CAE) {
    c.training.lr = 3e-3;
    c.training.batch_size = 8;
    c.training.max_epochs = 1000;
  }
  return c;
}

void ExperimentConfig::validate() const {
  scenario.validate();
  if (!is_power_of_two(spectrogram.window)) throw ConfigError("spectrogram.window: must be a power of two");
  if (spectrogram.rows < 1) throw ConfigError("spectrogram.rows: must be >= 1");
  if (!(spectrogram.epsilon > 0)) throw ConfigError("spectrogram.epsilon: must be > 0");
  if (scenario.frame_len < spectrogram.window * spectrogram.rows)
    throw ConfigError("scenario.frame_len: " + std::to_string(scenario.frame_len) + " < window*rows = " +
                      std::to_string(spectrogram.window * spectrogram.rows));
  splits.validate(model);
  training.validate();
  descriptor_for(model, static_cast<nn::Index>(spectrogram.rows), static_cast<nn::Index>(spectrogram.window),
                 scale);
}

namespace {

nlohmann::json counts_json(const LabelCounts& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [l, n] : c) j[std::string(to_string(l))] = n;
  return j;
}

LabelCounts counts_from_json(const nlohmann::json& j) {
  LabelCounts c;
  for (const auto& [k, v] : j.items()) c[parse_label(k)] = v.get<std::size_t>();
  return c;
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  return {
      {"experiment",
       {{"seed", seed},
        {"model", std::string(jamwatch::to_string(model))},
        {"scale", std::string(jamwatch::to_string(scale))},
        {"layout", std::string(jamwatch::to_string(layout))}}},
      {"scenario", scenario},
      {"spectrogram", {{"window", spectrogram.window}, {"rows", spectrogram.rows}, {"epsilon", spectrogram.epsilon}}},
      {"splits", {{"train", counts_json(splits.train)}, {"val", counts_json(splits.val)}, {"test", counts_json(splits.test)}}},
      {"training",
       {{"max_epochs", training.max_epochs},
        {"patience", training.patience},
        {"lr", training.lr},
        {"batch_size", training.batch_size},
        {"seed", training.seed},
        {"center_init", training.center_init}}},
  };
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    const auto& e = j.at("experiment");
    c.seed = e.at("seed").get<std::uint64_t>();
    c.model = parse_model_kind(e.at("model").get<std::string>());
    c.scale = parse_model_scale(e.at("scale").get<std::string>());
    c.layout = parse_iq_layout(e.at("layout").get<std::string>());
    c.scenario = j.at("scenario").get<ScenarioConfig>();
    const auto& s = j.at("spectrogram");
    c.spectrogram = {s.at("window").get<std::size_t>(), s.at("rows").get<std::size_t>(),
                     s.at("epsilon").get<double>()};
    const auto& sp = j.at("splits");
    c.splits = {counts_from_json(sp.at("train")), counts_from_json(sp.at("val")), counts_from_json(sp.at("test"))};
    const auto& t = j.at("training");
    c.training = {t.at("max_epochs").get<int>(), t.at("patience").get<int>(), t.at("lr").get<double>(),
                  t.at("batch_size").get<std::size_t>(), t.at("seed").get<std::uint64_t>(),
                  t.value("center_init", true)};
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("config JSON: ") + ex.what());
  }
  return c;
}

std::string ExperimentConfig::hash() const { return fingerprint(to_json()); }

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ConfigError(key + ": cannot parse '" + text + "'");
  return v;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  auto num = [](auto member) {
    return Setter([member](ExperimentConfig& c, const std::string& k, const std::string& v) {
      auto& field = member(c);
      field = parse_number<std::remove_reference_t<decltype(field)>>(k, v);
    });
  };
  auto counts = [](std::string split, Label l) {
    return Setter([split, l](ExperimentConfig& c, const std::string& k, const std::string& v) {
      auto& m = split == "train" ? c.splits.train : split == "val" ? c.splits.val : c.splits.test;
      m[l] = parse_number<std::size_t>(k, v);
    });
  };
  static const std::map<std::string, Setter> table = [&] {
    std::map<std::string, Setter> t;
    t["experiment.seed"] = num([](ExperimentConfig& c) -> auto& { return c.seed; });
    t["experiment.model"] = [](ExperimentConfig& c, const std::string&, const std::string& v) { c.model = parse_model_kind(v); };
    t["experiment.scale"] = [](ExperimentConfig& c, const std::string&, const std::string& v) { c.scale = parse_model_scale(v); };
    t["experiment.layout"] = [](ExperimentConfig& c, const std::string&, const std::string& v) { c.layout = parse_iq_layout(v); };
    t["scenario.sampling_rate"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.sampling_rate; });
    t["scenario.frame_len"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.frame_len; });
    t["scenario.noise_floor_power"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.noise_floor_power; });
    t["scenario.signal_power"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.signal_power; });
    t["scenario.jammer_power"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.jammer_power; });
    t["scenario.jammer_kind"] = [](ExperimentConfig& c, const std::string&, const std::string& v) {
      c.scenario.jammer_kind = parse_jammer_kind(v);
    };
    t["scenario.n_subcarriers"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.n_subcarriers; });
    t["scenario.active_bandwidth"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.active_bandwidth; });
    t["scenario.beacon_period"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.beacon_period; });
    t["scenario.beacon_len"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.beacon_len; });
    t["scenario.slot_len"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.slot_len; });
    t["scenario.burst_duty"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.burst_duty; });
    t["scenario.seed"] = num([](ExperimentConfig& c) -> auto& { return c.scenario.seed; });
    t["spectrogram.window"] = num([](ExperimentConfig& c) -> auto& { return c.spectrogram.window; });
    t["spectrogram.rows"] = num([](ExperimentConfig& c) -> auto& { return c.spectrogram.rows; });
    t["spectrogram.epsilon"] = num([](ExperimentConfig& c) -> auto& { return c.spectrogram.epsilon; });
    for (const std::string split : {"train", "val", "test"})
      for (Label l : kAllLabels) t["splits." + split + "_" + std::string(to_string(l))] = counts(split, l);
    t["training.max_epochs"] = num([](ExperimentConfig& c) -> auto& { return c.training.max_epochs; });
    t["training.patience"] = num([](ExperimentConfig& c) -> auto& { return c.training.patience; });
    t["training.lr"] = num([](ExperimentConfig& c) -> auto& { return c.training.lr; });
    t["training.batch_size"] = num([](ExperimentConfig& c) -> auto& { return c.training.batch_size; });
    t["training.seed"] = num([](ExperimentConfig& c) -> auto& { return c.training.seed; });
    t["training.center_init"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      if (v == "true" || v == "1") c.training.center_init = true;
      else if (v == "false" || v == "0") c.training.center_init = false;
      else throw ConfigError(k + ": expected true|false, got '" + v + "'");
    };
    return t;
  }();
  return table;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& ini_text, const std::vector<std::string>& overrides) {
  std::vector<std::pair<std::string, std::string>> entries;
  {
    boost::property_tree::ptree tree;
    std::istringstream is(ini_text);
    try {
      boost::property_tree::ini_parser::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
      if (body.empty()) throw ConfigError(section + ": key outside of a [section]");
      for (const auto& [key, value] : body) entries.emplace_back(section + "." + key, trim(value.data()));
    }
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError(o + ": override must look like section.key=value");
    entries.emplace_back(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }

  std::map<std::string, std::string> last;
  for (const auto& [k, v] : entries) {
    if (!setters().count(k)) throw ConfigError(k + ": unknown configuration key");
    last[k] = v;
  }

  auto pick = [&](const std::string& k, auto fallback, auto parse) {
    const auto it = last.find(k);
    return it == last.end() ? fallback : parse(it->second);
  };
  const ModelKind model = pick("experiment.model", ModelKind::CAE, parse_model_kind);
  const ModelScale scale = pick("experiment.scale", ModelScale::Full, parse_model_scale);
  const std::uint64_t seed = pick("experiment.seed", std::uint64_t{1},
                                  [](const std::string& v) { return parse_number<std::uint64_t>("experiment.seed", v); });

  ExperimentConfig c = ExperimentConfig::defaults(model, scale, seed);
  for (const auto& [k, v] : entries) setters().at(k)(c, k, v);
  c.validate();
  return c;
}

ExperimentConfig load_config_file(const fs::path& path, const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << is.rdbuf();
  if (path.extension() == ".json") {
    ExperimentConfig c;
    try {
      c = ExperimentConfig::from_json(nlohmann::json::parse(ss.str()));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError(o + ": override must look like section.key=value");
      const std::string k = trim(o.substr(0, eq));
      if (!setters().count(k)) throw ConfigError(k + ": unknown configuration key");
      setters().at(k)(c, k, trim(o.substr(eq + 1)));
    }
    c.validate();
    return c;
  }
  return parse_config(ss.str(), overrides);
}

// ---------------------------------------------------------------- stages

namespace {

void guard(const fs::path& p, bool force) {
  if (fs::exists(p) && !force) throw ArgumentError(p.string() + ": exists (use --force to overwrite)");
}

nlohmann::json read_json_file(const fs::path& p) {
  std::ifstream is(p);
  if (!is) throw FormatError(p.string() + ": cannot open");
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

const LabelCounts& split_counts(const SplitSpec& s, const std::string& split) {
  return split == "train" ? s.train : split == "val" ? s.val : s.test;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void run_simulate(const ExperimentConfig& cfg, const fs::path& out, bool force) {
  cfg.validate();
  const ExperimentPaths paths{out};
  guard(paths.config(), force);
  guard(out / "iq", force);
  if (force) fs::remove_all(out / "iq");
  fs::create_directories(out);
  nlohmann::json echo = cfg.to_json();
  echo["config_hash"] = cfg.hash();
  write_text_file(paths.config(), echo.dump(2) + "\n");

  for (std::size_t s = 0; s < kSplits.size(); ++s) {
    const std::string& split = kSplits[s];
    const std::uint64_t seed = derive_seed(cfg.scenario.seed, s);
    IqCorpusWriter w(paths.iq(split), cfg.scenario, seed, cfg.layout,
                     {{"config_hash", cfg.hash()}, {"split", split}});
    for (const auto& [label, frame_seed] : corpus_plan(split_counts(cfg.splits, split), seed))
      w.append(gen_frame(cfg.scenario, label, frame_seed));
    w.finish();
  }
}

void run_spectrogram(const ExperimentConfig& cfg, const fs::path& out, bool force) {
  cfg.validate();
  const ExperimentPaths paths{out};
  guard(out / "spectrograms", force);
  fs::create_directories(out / "spectrograms");
  for (const auto& split : kSplits) {
    IqCorpusReader reader(paths.iq(split));
    std::vector<std::optional<Label>> labels;
    for (std::size_t i = 0; i < reader.size(); ++i) labels.push_back(reader.label(i));
    DatasetWriter w(paths.dataset(split), static_cast<Eigen::Index>(cfg.spectrogram.rows),
                    static_cast<Eigen::Index>(cfg.spectrogram.window), Domain::NegLog, labels,
                    {{"config_hash", cfg.hash()}, {"split", split}, {"epsilon", cfg.spectrogram.epsilon}});
    for (std::size_t i = 0; i < reader.size(); ++i)
      w.append(neg_log(build_spectrogram(reader.load(i), cfg.spectrogram.window, cfg.spectrogram.rows),
                       cfg.spectrogram.epsilon));
    w.finish();
  }
}

TrainResult run_train(const ExperimentConfig& cfg, const fs::path& out, bool force) {
  cfg.validate();
  const ExperimentPaths paths{out};
  for (const auto& p : {paths.checkpoint(), paths.loss_trace(), paths.train_summary()}) guard(p, force);

  const auto train_set = read_dataset(paths.dataset("train"));
  const auto val_set = read_dataset(paths.dataset("val"));
  const ModelDescriptor d = descriptor_for(cfg.model, static_cast<nn::Index>(cfg.spectrogram.rows),
                                           static_cast<nn::Index>(cfg.spectrogram.window), cfg.scale);
  nn::Network<float> net = build(d, derive_seed(cfg.training.seed, 0xC0DE));
  const Objective objective = cfg.model == ModelKind::CAE ? Objective::Reconstruction : Objective::Classification;
  const TrainResult r = train(net, train_set, val_set, cfg.training, objective);

  nlohmann::json summary{{"config_hash", cfg.hash()},
                         {"model", std::string(to_string(cfg.model))},
                         {"scale", std::string(to_string(cfg.scale))},
                         {"best_epoch", r.best_epoch},
                         {"stopped_epoch", r.stopped_epoch},
                         {"early_stopped", r.early_stopped},
                         {"best_val_loss", r.best_val_loss}};
  save_checkpoint(paths.checkpoint(), net, summary);
  write_text_file(paths.loss_trace(), trace_csv(r));
  write_text_file(paths.train_summary(), summary.dump(2) + "\n");
  return r;
}

nlohmann::json run_eval(const ExperimentConfig& cfg, const fs::path& out, bool force, const EvalOptions& opts) {
  const ExperimentPaths paths{out};
  for (const auto& p : {paths.sweep(), paths.scores(), paths.eval_summary()}) guard(p, force);

  const auto ck = nn::load_checkpoint(paths.checkpoint());
  const ScoreKind kind = score_kind(objective_for(ck.net));
  const auto test = read_dataset(paths.dataset("test"));

  std::vector<double> trusted, jammed;
  std::string scores_csv = "index,label,score\n";
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (!test[i].label) throw FormatError(paths.dataset("test").string() + ": sample " + std::to_string(i) + " has no label");
    const double s = score(ck.net, test[i], kind);
    (is_jammed(*test[i].label) ? jammed : trusted).push_back(s);
    scores_csv += std::to_string(i) + "," + std::string(to_string(*test[i].label)) + "," + fmt_double(s) + "\n";
  }
  const SweepCurve curve = sweep(trusted, jammed, kind);
  const auto grid_interval = zero_error_interval(curve);
  const auto exact = separating_interval(trusted, jammed);

  auto mean = [](const std::vector<double>& v) {
    double a = 0;
    for (double x : v) a += x;
    return a / static_cast<double>(v.size());
  };
  auto accuracy_at = [&](double tau) {
    std::size_t ok = 0;
    for (double s : trusted) ok += decide(s, tau) == Decision::H0;
    for (double s : jammed) ok += decide(s, tau) == Decision::H1;
    return static_cast<double>(ok) / static_cast<double>(trusted.size() + jammed.size());
  };

  double suggested = 0.5;
  if (kind == ScoreKind::ReconstructionError) {
    if (exact) {
      suggested = std::sqrt(std::max(exact->lo, 1e-300) * exact->hi);
    } else {
      double best = 3;
      for (const auto& p : curve.points)
        if (p.p_fa + p.p_md < best) best = p.p_fa + p.p_md, suggested = p.tau;
    }
  }

  auto interval_json = [](const std::optional<Interval>& i) {
    return i ? nlohmann::json{{"lo", i->lo}, {"hi", i->hi}} : nlohmann::json();
  };
  nlohmann::json summary{{"config_hash", cfg.hash()},
                         {"score_kind", std::string(to_string(kind))},
                         {"trusted_count", trusted.size()},
                         {"jammed_count", jammed.size()},
                         {"mean_score_trusted", mean(trusted)},
                         {"mean_score_jammed", mean(jammed)},
                         {"score_ratio", mean(jammed) / mean(trusted)},
                         {"zero_error_interval", interval_json(grid_interval)},
                         {"separating_interval", interval_json(exact)},
                         {"suggested_threshold", suggested},
                         {"accuracy_at_suggested", accuracy_at(suggested)}};
  if (fs::exists(paths.train_summary())) {
    const auto ts = read_json_file(paths.train_summary());
    summary["best_epoch"] = ts.at("best_epoch");
    summary["stopped_epoch"] = ts.at("stopped_epoch");
  }
  if (opts.calibrate_margin) {
    const auto val = read_dataset(paths.dataset("val"));
    double max_val = -std::numeric_limits<double>::infinity();
    for (const auto& v : val)
      if (!v.label || !is_jammed(*v.label)) max_val = std::max(max_val, score(ck.net, v, kind));
    const double tau = max_val * *opts.calibrate_margin;
    const SweepCurve at = sweep(trusted, jammed, std::vector<double>{tau}, kind);
    summary["calibrated"] = {{"margin", *opts.calibrate_margin},
                             {"threshold", tau},
                             {"p_fa", at.points[0].p_fa},
                             {"p_md", at.points[0].p_md}};
  }

  write_text_file(paths.sweep(), to_csv(curve));
  write_text_file(paths.scores(), scores_csv);
  write_text_file(paths.eval_summary(), summary.dump(2) + "\n");
  return summary;
}

LatencyReport run_bench(const ExperimentConfig& cfg, const fs::path& out, bool force, const BenchOptions& opts) {
  const ExperimentPaths paths{out};
  for (const auto& p : {paths.latency(), paths.bench_summary()}) guard(p, force);

  const auto ck = nn::load_checkpoint(opts.checkpoint.value_or(paths.checkpoint()));
  const ScoreKind kind = score_kind(objective_for(ck.net));
  double threshold = kind == ScoreKind::ClassProbability ? 0.5 : 0.0;
  if (opts.threshold) {
    threshold = *opts.threshold;
  } else if (fs::exists(paths.eval_summary())) {
    threshold = read_json_file(paths.eval_summary()).at("suggested_threshold").get<double>();
  }

  CorpusFileSource source(opts.source.value_or(paths.iq("test")), opts.cycle);
  const PipelineSpec spec{static_cast<std::size_t>(ck.net.input_shape()[1]),
                          static_cast<std::size_t>(ck.net.input_shape()[0]), cfg.spectrogram.epsilon, threshold,
                          kind};
  const LatencyReport r = time_pipeline(ck.net, source, spec, opts.trials, opts.warmup);

  const bool is_cae = kind == ScoreKind::ReconstructionError;
  nlohmann::json summary{{"config_hash", cfg.hash()},
                         {"model_kind", is_cae ? "cae" : "cnn"},
                         {"trials", r.samples.size()},
                         {"warmup", r.warmup},
                         {"warmup_mean_ms", r.warmup_mean_ms},
                         {"p50", r.p50},
                         {"p95", r.p95},
                         {"p99", r.p99},
                         {"threshold", threshold},
                         {"detections", r.detections},
                         {"reference_p95_ms", is_cae ? 48.0 : 46.0}};
  write_text_file(paths.latency(), latency_csv(r));
  write_text_file(paths.bench_summary(), summary.dump(2) + "\n");
  return r;
}

std::string run_describe(const fs::path& checkpoint) {
  const auto ck = nn::load_checkpoint(checkpoint);
  return format_layer_table(ck.net);
}

}  // namespace jamwatch
