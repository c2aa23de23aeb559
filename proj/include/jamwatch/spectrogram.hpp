#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "jamwatch/fft.hpp"
#include "jamwatch/iq_sim.hpp"

namespace jamwatch {

/// Regulariser of the log transform; keeps empty bins finite.
inline constexpr double kNegLogEpsilon = 1e-21;

/// Power spectral density of one window, zero frequency at index n/2.
struct PsdArray {
  Eigen::VectorXd values;
  Eigen::Index size() const { return values.size(); }
};

enum class Domain { Linear, NegLog };

std::string_view to_string(Domain d);
Domain parse_domain(std::string_view s);

using SpectrogramMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Stack of PSD rows, one per consecutive window.
struct Spectrogram {
  SpectrogramMatrix data;
  Domain domain = Domain::Linear;
  std::optional<Label> label;

  Eigen::Index rows() const { return data.rows(); }
  Eigen::Index cols() const { return data.cols(); }
};

/// |FFT(window)|^2 / (n * sampling_rate), fft-shifted. Rectangular window.
/// Throws ConfigError when the window length is not a power of two.
PsdArray compute_psd(std::span<const cfloat> window, double sampling_rate);

/// Row i is the PSD of samples [i*n, (i+1)*n); trailing samples are ignored.
/// Throws LengthError when the frame holds fewer than n*rows samples.
Spectrogram build_spectrogram(const IQFrame& frame, std::size_t n = 1024, std::size_t rows = 100);

/// Elementwise x -> -ln(x + eps). Throws StateError if `s` is already NegLog.
Spectrogram neg_log(const Spectrogram& s, double eps = kNegLogEpsilon);

struct DatasetManifest {
  std::size_t count = 0;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Domain domain = Domain::NegLog;
  std::vector<std::optional<Label>> labels;
};

/// Single-file dataset: JSON manifest header followed by the matrices as
/// row-major little-endian f32, concatenated in manifest order. All entries
/// must share shape and domain. `extra` is merged into the header.
DatasetManifest write_dataset(std::span<const Spectrogram> specs,
                              const std::filesystem::path& path,
                              const nlohmann::json& extra = nlohmann::json::object());

/// Streaming form of write_dataset() for corpora too large to hold in memory.
class DatasetWriter {
 public:
  DatasetWriter(const std::filesystem::path& path, Eigen::Index rows, Eigen::Index cols, Domain domain,
                std::vector<std::optional<Label>> labels, const nlohmann::json& extra = nlohmann::json::object());
  ~DatasetWriter();
  DatasetWriter(const DatasetWriter&) = delete;
  DatasetWriter& operator=(const DatasetWriter&) = delete;

  /// Throws ShapeError when `s` disagrees with the declared shape, domain or label.
  void append(const Spectrogram& s);
  DatasetManifest finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<Spectrogram> read_dataset(const std::filesystem::path& path);

}  // namespace jamwatch
