#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "jamwatch/detector.hpp"
#include "jamwatch/nn/network.hpp"
#include "jamwatch/spectrogram.hpp"

namespace jamwatch {

struct TrainConfig {
  int max_epochs = 200;
  int patience = 6;
  double lr = 1e-3;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  /// Data-dependent bias start: the first convolution's pre-activations are
  /// centred on the mean training pixel.
  bool center_init = true;

  void validate() const;
};

/// What the network is trained to do: reproduce its input (MSE against the
/// input) or predict the jammed/not-jammed label (binary cross-entropy).
enum class Objective { Reconstruction, Classification };

/// Stops once the validation loss has gone `patience` consecutive epochs
/// without beating the best value seen so far.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience);

  /// Feeds one epoch's validation loss; returns true when training should stop.
  bool observe(double val_loss);

  int best_epoch() const { return best_epoch_; }  // 1-based, 0 before any epoch
  double best_loss() const { return best_; }
  int epochs() const { return epochs_; }
  bool last_improved() const { return last_improved_; }

 private:
  int patience_;
  int epochs_ = 0;
  int best_epoch_ = 0;
  int since_best_ = 0;
  bool last_improved_ = false;
  double best_ = std::numeric_limits<double>::infinity();
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;
  double val_loss = 0;
};

struct TrainResult {
  std::vector<EpochRecord> trace;
  int best_epoch = 0;
  int stopped_epoch = 0;
  bool early_stopped = false;
  double best_val_loss = 0;
};

/// rows x cols x 1 tensor view of a spectrogram.
nn::Tensor<float> to_tensor(const Spectrogram& s);

/// Applies the TrainConfig::center_init bias start to `net` for `set`.
void center_biases(nn::Network<float>& net, std::span<const Spectrogram> set);

/// Mini-batch Adam with early stopping; `net` ends up holding the parameters
/// of the best validation epoch.
///
/// Reconstruction requires train/val free of jammed samples. Classification
/// requires every sample to carry a label (jammed -> 1, otherwise 0).
/// Throws ArgumentError for empty or ill-labelled sets and TrainingError
/// (naming the epoch) on a non-finite loss.
TrainResult train(nn::Network<float>& net, std::span<const Spectrogram> train_set,
                  std::span<const Spectrogram> val_set, const TrainConfig& cfg, Objective objective);

/// Mean per-sample loss over a set: mean reconstruction error, or BCE.
double evaluate_loss(const nn::Network<float>& net, std::span<const Spectrogram> set, Objective objective);

ScoreKind score_kind(Objective o);
Objective objective_for(const nn::Network<float>& net);

/// Reconstruction error ||X - net(X)||^2, or the output probability.
double score(const nn::Network<float>& net, const Spectrogram& x, ScoreKind kind);

/// "epoch,train_loss,val_loss" with 17 significant digits.
std::string trace_csv(const TrainResult& r);

}  // namespace jamwatch
