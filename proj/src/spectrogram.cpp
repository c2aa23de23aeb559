#include "jamwatch/spectrogram.hpp"

#include <cmath>

#include "jamwatch/container.hpp"
#include "jamwatch/error.hpp"

namespace jamwatch {

namespace {
constexpr std::string_view kDatasetMagic = "JWDSET01";
constexpr int kDatasetVersion = 1;
}  // namespace

std::string_view to_string(Domain d) { return d == Domain::Linear ? "linear" : "neglog"; }

Domain parse_domain(std::string_view s) {
  if (s == "linear") return Domain::Linear;
  if (s == "neglog") return Domain::NegLog;
  throw FormatError("unknown spectrogram domain '" + std::string(s) + "'");
}

PsdArray compute_psd(std::span<const cfloat> window, double sampling_rate) {
  const std::size_t n = window.size();
  if (!is_power_of_two(n))
    throw ConfigError("window length " + std::to_string(n) + " is not a power of two");

  std::vector<cdouble> buf(n);
  for (std::size_t k = 0; k < n; ++k) buf[k] = {window[k].real(), window[k].imag()};
  fft_inplace(buf);
  fftshift(std::span<cdouble>(buf));

  PsdArray psd;
  psd.values.resize(static_cast<Eigen::Index>(n));
  const double scale = 1.0 / (static_cast<double>(n) * sampling_rate);
  for (std::size_t k = 0; k < n; ++k) psd.values[static_cast<Eigen::Index>(k)] = std::norm(buf[k]) * scale;
  return psd;
}

Spectrogram build_spectrogram(const IQFrame& frame, std::size_t n, std::size_t rows) {
  const std::size_t need = n * rows;
  if (frame.samples.size() < need)
    throw LengthError("frame holds " + std::to_string(frame.samples.size()) +
                      " samples, spectrogram needs " + std::to_string(need));
  Spectrogram s;
  s.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  s.domain = Domain::Linear;
  s.label = frame.label;
  const std::span<const cfloat> all(frame.samples);
  for (std::size_t i = 0; i < rows; ++i) {
    const PsdArray psd = compute_psd(all.subspan(i * n, n), frame.sampling_rate);
    s.data.row(static_cast<Eigen::Index>(i)) = psd.values.cast<float>().transpose();
  }
  return s;
}

Spectrogram neg_log(const Spectrogram& s, double eps) {
  if (s.domain != Domain::Linear) throw StateError("neg_log applied to a spectrogram already in neglog domain");
  Spectrogram out;
  out.label = s.label;
  out.domain = Domain::NegLog;
  out.data = s.data.unaryExpr([eps](float x) {
    return static_cast<float>(-std::log(static_cast<double>(x) + eps));
  });
  return out;
}

struct DatasetWriter::Impl {
  DatasetManifest manifest;
  std::size_t appended = 0;
  std::filesystem::path path;
  ContainerWriter out;
};

namespace {

nlohmann::json dataset_header(const DatasetManifest& m, const nlohmann::json& extra) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& l : m.labels)
    labels.push_back(l ? nlohmann::json(std::string(to_string(*l))) : nlohmann::json());
  nlohmann::json header = extra;
  header["format_version"] = kDatasetVersion;
  header["count"] = m.count;
  header["rows"] = m.rows;
  header["cols"] = m.cols;
  header["domain"] = std::string(to_string(m.domain));
  header["labels"] = labels;
  return header;
}

}  // namespace

DatasetWriter::DatasetWriter(const std::filesystem::path& path, Eigen::Index rows, Eigen::Index cols,
                             Domain domain, std::vector<std::optional<Label>> labels, const nlohmann::json& extra) {
  DatasetManifest m{labels.size(), rows, cols, domain, std::move(labels)};
  const auto floats = static_cast<std::uint64_t>(m.count) * static_cast<std::uint64_t>(rows * cols);
  impl_.reset(new Impl{m, 0, path, ContainerWriter(path, kDatasetMagic, dataset_header(m, extra), floats)});
}

DatasetWriter::~DatasetWriter() = default;

void DatasetWriter::append(const Spectrogram& s) {
  auto& m = impl_->manifest;
  const std::size_t i = impl_->appended;
  if (i >= m.count) throw ShapeError(impl_->path.string() + ": more entries than declared (" + std::to_string(m.count) + ")");
  if (s.rows() != m.rows || s.cols() != m.cols || s.domain != m.domain)
    throw ShapeError("dataset entry " + std::to_string(i) + " is " + std::to_string(s.rows()) + "x" +
                     std::to_string(s.cols()) + " " + std::string(to_string(s.domain)) + ", expected " +
                     std::to_string(m.rows) + "x" + std::to_string(m.cols) + " " +
                     std::string(to_string(m.domain)));
  if (s.label != m.labels[i]) throw ShapeError("dataset entry " + std::to_string(i) + " label differs from manifest");
  impl_->out.append({s.data.data(), static_cast<std::size_t>(s.data.size())});
  ++impl_->appended;
}

DatasetManifest DatasetWriter::finish() {
  impl_->out.finish();
  return impl_->manifest;
}

DatasetManifest write_dataset(std::span<const Spectrogram> specs, const std::filesystem::path& path,
                              const nlohmann::json& extra) {
  Eigen::Index rows = 0, cols = 0;
  Domain domain = Domain::NegLog;
  std::vector<std::optional<Label>> labels;
  if (!specs.empty()) {
    rows = specs.front().rows();
    cols = specs.front().cols();
    domain = specs.front().domain;
  }
  for (const auto& s : specs) labels.push_back(s.label);
  DatasetWriter w(path, rows, cols, domain, std::move(labels), extra);
  for (const auto& s : specs) w.append(s);
  return w.finish();
}

std::vector<Spectrogram> read_dataset(const std::filesystem::path& path) {
  const Container c = read_container(path, kDatasetMagic);
  const auto& h = c.header;
  std::size_t count = 0;
  Eigen::Index rows = 0, cols = 0;
  Domain domain{};
  std::vector<std::optional<Label>> labels;
  try {
    if (h.at("format_version").get<int>() != kDatasetVersion)
      throw FormatError(path.string() + ": unsupported dataset version");
    count = h.at("count").get<std::size_t>();
    rows = h.at("rows").get<Eigen::Index>();
    cols = h.at("cols").get<Eigen::Index>();
    domain = parse_domain(h.at("domain").get<std::string>());
    for (const auto& l : h.at("labels"))
      labels.push_back(l.is_null() ? std::nullopt : std::optional(parse_label(l.get<std::string>())));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  const auto per = static_cast<std::size_t>(rows * cols);
  if (labels.size() != count || c.payload.size() != count * per)
    throw FormatError(path.string() + ": shape mismatch between manifest (" + std::to_string(count) +
                      " x " + std::to_string(rows) + "x" + std::to_string(cols) + ") and payload (" +
                      std::to_string(c.payload.size()) + " floats)");
  std::vector<Spectrogram> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i].data = Eigen::Map<const SpectrogramMatrix>(c.payload.data() + i * per, rows, cols);
    out[i].domain = domain;
    out[i].label = labels[i];
  }
  return out;
}

}  // namespace jamwatch
