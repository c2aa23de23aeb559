#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace jamwatch {

/// On-disk layout shared by datasets and checkpoints:
///
///   8-byte magic | u64 header length | JSON header | u64 float count | f32[]
///
/// All integers and floats little-endian.
struct Container {
  nlohmann::json header;
  std::vector<float> payload;
};

void write_container(const std::filesystem::path& path, std::string_view magic,
                     const nlohmann::json& header, std::span<const float> payload);

/// Streams a container whose payload size is known up front.
class ContainerWriter {
 public:
  ContainerWriter(const std::filesystem::path& path, std::string_view magic, const nlohmann::json& header,
                  std::uint64_t payload_count);
  void append(std::span<const float> values);
  /// Throws FormatError unless exactly payload_count floats were appended.
  void finish();

 private:
  std::filesystem::path path_;
  std::ofstream os_;
  std::uint64_t expected_ = 0;
  std::uint64_t written_ = 0;
};

/// Throws FormatError on a wrong magic, a truncated file, or trailing bytes.
Container read_container(const std::filesystem::path& path, std::string_view magic);

/// Raw little-endian f32 helpers.
void write_f32(std::ostream& os, std::span<const float> values);
void read_f32(std::istream& is, std::span<float> values, const std::string& what);

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string fingerprint(const nlohmann::json& j);

/// Writes `text` to `path`, refusing to replace an existing file unless
/// `overwrite` is set.
void write_text_file(const std::filesystem::path& path, const std::string& text,
                     bool overwrite = true);

}  // namespace jamwatch
