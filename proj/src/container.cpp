#include "jamwatch/container.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "jamwatch/error.hpp"

namespace jamwatch {

namespace {

static_assert(sizeof(float) == 4);

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

void write_u64(std::ostream& os, std::uint64_t v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& is, const std::string& what) {
  std::uint64_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw FormatError(what + ": truncated while reading length field");
  return to_little(v);
}

}  // namespace

void write_f32(std::ostream& os, std::span<const float> values) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(values.data()),
             static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (float f : values) {
      const float le = to_little(f);
      os.write(reinterpret_cast<const char*>(&le), sizeof le);
    }
  }
}

void read_f32(std::istream& is, std::span<float> values, const std::string& what) {
  if (!is.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size_bytes())))
    throw FormatError(what + ": truncated payload (expected " + std::to_string(values.size()) +
                      " floats)");
  if constexpr (std::endian::native == std::endian::big)
    for (float& f : values) f = to_little(f);
}

ContainerWriter::ContainerWriter(const std::filesystem::path& path, std::string_view magic,
                                 const nlohmann::json& header, std::uint64_t payload_count)
    : path_(path), os_(path, std::ios::binary | std::ios::trunc), expected_(payload_count) {
  if (magic.size() != 8) throw ArgumentError("container magic must be 8 bytes");
  if (!os_) throw FormatError(path.string() + ": cannot open for writing");
  const std::string text = header.dump();
  os_.write(magic.data(), 8);
  write_u64(os_, text.size());
  os_.write(text.data(), static_cast<std::streamsize>(text.size()));
  write_u64(os_, payload_count);
}

void ContainerWriter::append(std::span<const float> values) {
  if (written_ + values.size() > expected_)
    throw FormatError(path_.string() + ": payload overflow (declared " + std::to_string(expected_) + " floats)");
  write_f32(os_, values);
  written_ += values.size();
}

void ContainerWriter::finish() {
  if (written_ != expected_)
    throw FormatError(path_.string() + ": wrote " + std::to_string(written_) + " of " +
                      std::to_string(expected_) + " declared floats");
  os_.flush();
  if (!os_) throw FormatError(path_.string() + ": write failed");
  os_.close();
}

void write_container(const std::filesystem::path& path, std::string_view magic,
                     const nlohmann::json& header, std::span<const float> payload) {
  ContainerWriter w(path, magic, header, payload.size());
  w.append(payload);
  w.finish();
}

Container read_container(const std::filesystem::path& path, std::string_view magic) {
  const std::string what = path.string();
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(what + ": cannot open");
  const auto file_size = std::filesystem::file_size(path);

  char got[8] = {};
  if (!is.read(got, 8)) throw FormatError(what + ": truncated magic");
  if (std::string_view(got, 8) != magic)
    throw FormatError(what + ": bad magic, expected '" + std::string(magic) + "'");

  const std::uint64_t header_len = read_u64(is, what);
  if (header_len > file_size) throw FormatError(what + ": header length exceeds file size");
  std::string text(header_len, '\0');
  if (!is.read(text.data(), static_cast<std::streamsize>(header_len)))
    throw FormatError(what + ": truncated header");

  Container c;
  try {
    c.header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(what + ": header is not valid JSON (" + e.what() + ")");
  }

  const std::uint64_t count = read_u64(is, what);
  const std::uint64_t consumed = 8 + 8 + header_len + 8;
  if (count * sizeof(float) != file_size - consumed)
    throw FormatError(what + ": payload size mismatch (header says " + std::to_string(count) +
                      " floats, file holds " + std::to_string((file_size - consumed) / 4) + ")");
  c.payload.resize(count);
  read_f32(is, c.payload, what);
  return c;
}

std::string fingerprint(const nlohmann::json& j) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text,
                     bool overwrite) {
  if (!overwrite && std::filesystem::exists(path))
    throw ArgumentError(path.string() + ": exists (use --force to overwrite)");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError(path.string() + ": cannot open for writing");
  os << text;
  if (!os) throw FormatError(path.string() + ": write failed");
}

}  // namespace jamwatch
