#include "jamwatch/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "jamwatch/nn/adam.hpp"
#include "jamwatch/nn/loss.hpp"

namespace jamwatch {

void TrainConfig::validate() const {
  if (max_epochs < 1) throw ConfigError("max_epochs: must be >= 1");
  if (patience < 1) throw ConfigError("patience: must be >= 1");
  if (!(lr > 0)) throw ConfigError("lr: must be > 0");
  if (batch_size < 1) throw ConfigError("batch_size: must be >= 1");
}

EarlyStopping::EarlyStopping(int patience) : patience_(patience) {
  if (patience < 1) throw ConfigError("patience: must be >= 1");
}

bool EarlyStopping::observe(double val_loss) {
  ++epochs_;
  last_improved_ = val_loss < best_;
  if (last_improved_) {
    best_ = val_loss;
    best_epoch_ = epochs_;
    since_best_ = 0;
  } else {
    ++since_best_;
  }
  return since_best_ >= patience_;
}

nn::Tensor<float> to_tensor(const Spectrogram& s) {
  return nn::Tensor<float>(nn::Shape{s.rows(), s.cols(), 1},
                           Eigen::Map<const nn::Vector<float>>(s.data.data(), s.data.size()));
}

ScoreKind score_kind(Objective o) {
  return o == Objective::Reconstruction ? ScoreKind::ReconstructionError : ScoreKind::ClassProbability;
}

Objective objective_for(const nn::Network<float>& net) {
  if (net.output_shape() == net.input_shape()) return Objective::Reconstruction;
  if (net.output_shape() == nn::Shape{1}) return Objective::Classification;
  throw ShapeError("network output " + net.output_shape().str() + " is neither a reconstruction nor a probability");
}

double score(const nn::Network<float>& net, const Spectrogram& x, ScoreKind kind) {
  const auto in = to_tensor(x);
  const auto out = nn::predict(net, in);
  if (kind == ScoreKind::ReconstructionError) return nn::mse(in, out);
  if (out.size() != 1) throw ShapeError("classifier output must be a single value, got " + out.shape.str());
  return static_cast<double>(out.data[0]);
}

namespace {

struct Prepared {
  std::vector<nn::Tensor<float>> inputs;
  std::vector<double> labels;
};

Prepared prepare(std::span<const Spectrogram> set, Objective objective, const char* name) {
  if (set.empty()) throw ArgumentError(std::string(name) + " set is empty");
  Prepared p;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& s = set[i];
    if (objective == Objective::Reconstruction) {
      if (s.label && is_jammed(*s.label))
        throw ArgumentError(std::string(name) + " sample " + std::to_string(i) +
                            " is jammed; reconstruction training uses trusted data only");
    } else {
      if (!s.label)
        throw ArgumentError(std::string(name) + " sample " + std::to_string(i) + " has no label");
      p.labels.push_back(is_jammed(*s.label) ? 1.0 : 0.0);
    }
    p.inputs.push_back(to_tensor(s));
  }
  return p;
}

double prepared_loss(const nn::Network<float>& net, const Prepared& p, Objective objective) {
  if (objective == Objective::Reconstruction) {
    double acc = 0;
    for (const auto& x : p.inputs) acc += nn::mse(x, nn::predict(net, x));
    return acc / static_cast<double>(p.inputs.size());
  }
  std::vector<double> preds;
  preds.reserve(p.inputs.size());
  for (const auto& x : p.inputs) preds.push_back(static_cast<double>(nn::predict(net, x).data[0]));
  return nn::bce(p.labels, preds);
}

}  // namespace

double evaluate_loss(const nn::Network<float>& net, std::span<const Spectrogram> set, Objective objective) {
  return prepared_loss(net, prepare(set, objective, "evaluation"), objective);
}

void center_biases(nn::Network<float>& net, std::span<const Spectrogram> set) {
  if (set.empty() || net.size() == 0) return;
  double sum = 0;
  std::size_t count = 0;
  for (const auto& s : set) {
    sum += s.data.cast<double>().sum();
    count += static_cast<std::size_t>(s.data.size());
  }
  const double mean = sum / static_cast<double>(count);

  if (std::holds_alternative<nn::Conv2D>(net.layers().front())) {
    auto& p = net.mutable_params().front();
    p.bias = (-mean * p.weight.cast<double>().colwise().sum().transpose()).cast<float>();
  }
}

TrainResult train(nn::Network<float>& net, std::span<const Spectrogram> train_set,
                  std::span<const Spectrogram> val_set, const TrainConfig& cfg, Objective objective) {
  cfg.validate();
  const Prepared tr = prepare(train_set, objective, "train");
  const Prepared va = prepare(val_set, objective, "validation");

  if (cfg.center_init) center_biases(net, train_set);

  std::mt19937_64 rng(cfg.seed);
  auto adam = nn::make_adam(net, cfg.lr);
  EarlyStopping stopper(cfg.patience);
  TrainResult result;
  auto best_params = net.params();

  const auto* last_act = net.size() ? std::get_if<nn::Activation>(&net.layers().back()) : nullptr;
  const bool sigmoid_output = objective == Objective::Classification && last_act &&
                              last_act->kind == nn::ActivationKind::Sigmoid;

  std::vector<std::size_t> order(tr.inputs.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::size_t batch = end - start;
      auto grads = nn::zero_gradients(net);
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t idx = order[b];
        const auto& x = tr.inputs[idx];
        const auto acts = nn::forward(net, x);
        nn::Tensor<float> upstream;
        if (objective == Objective::Reconstruction) {
          epoch_loss += nn::mse(x, acts.output());
          upstream = nn::mse_grad(x, acts.output(), 1.0f / static_cast<float>(batch));
        } else {
          const double pred = acts.output().data[0];
          const double y = tr.labels[idx];
          epoch_loss += nn::bce(std::span<const double>(&y, 1), std::span<const double>(&pred, 1));
          upstream = nn::Tensor<float>(acts.output().shape);
          if (sigmoid_output) {
            upstream.data[0] = static_cast<float>(nn::bce_logit_grad(y, pred, batch));
          } else {
            upstream.data[0] = static_cast<float>(nn::bce_grad(y, pred, batch));
          }
        }
        nn::backward_accumulate(net, acts, upstream, grads, sigmoid_output ? 1 : 0);
      }
      try {
        nn::adam_step(net.mutable_params(), grads, adam);
      } catch (const TrainingError& e) {
        throw TrainingError("epoch " + std::to_string(epoch) + ": " + e.what());
      }
    }
    epoch_loss /= static_cast<double>(order.size());
    const double val_loss = prepared_loss(net, va, objective);
    if (!std::isfinite(epoch_loss) || !std::isfinite(val_loss))
      throw TrainingError("epoch " + std::to_string(epoch) + ": non-finite loss (train " +
                          std::to_string(epoch_loss) + ", val " + std::to_string(val_loss) + ")");
    result.trace.push_back({epoch, epoch_loss, val_loss});
    const bool stop = stopper.observe(val_loss);
    if (stopper.last_improved()) best_params = net.params();
    result.stopped_epoch = epoch;
    if (stop) {
      result.early_stopped = true;
      break;
    }
  }
  net.mutable_params() = best_params;
  result.best_epoch = stopper.best_epoch();
  result.best_val_loss = stopper.best_loss();
  return result;
}

std::string trace_csv(const TrainResult& r) {
  std::string out = "epoch,train_loss,val_loss\n";
  char line[96];
  for (const auto& e : r.trace) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", e.epoch, e.train_loss, e.val_loss);
    out += line;
  }
  return out;
}

}  // namespace jamwatch
