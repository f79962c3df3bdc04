#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stegaug/error.hpp"
#include "stegaug/image.hpp"
#include "stegaug/pipeline.hpp"

namespace stegaug {

using Bytes = std::vector<std::uint8_t>;

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failed on " + path.string());
  }
  return bytes;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed on " + path.string());
  }
}

// ---------------------------------------------------------------------------
// CIFAR-10 binary batches: 3073-byte records, one label byte followed by
// 3072 channel-planar pixel bytes.

inline constexpr std::size_t kCifarRecordSize = 1 + 32 * 32 * 3;

inline std::vector<Sample> parse_cifar10(std::span<const std::uint8_t> bytes) {
  if (const std::size_t tail = bytes.size() % kCifarRecordSize; tail != 0) {
    throw FormatError("truncated record at offset " + std::to_string(bytes.size() - tail));
  }
  const std::size_t n = bytes.size() / kCifarRecordSize;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t offset = r * kCifarRecordSize;
    if (bytes[offset] >= kCifarClasses) {
      throw FormatError("invalid label " + std::to_string(bytes[offset]) + " at offset " +
                        std::to_string(offset));
    }
  }

  std::vector<Sample> samples;
  samples.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto record = bytes.subspan(r * kCifarRecordSize, kCifarRecordSize);
    samples.push_back({Image(kCifarShape, Bytes(record.begin() + 1, record.end())),
                       one_hot(record[0])});
  }
  return samples;
}

inline std::vector<Sample> read_cifar10(const std::filesystem::path& path) {
  return parse_cifar10(read_file(path));
}

/// Inverse of parse_cifar10, for one-hot samples of CIFAR shape.
inline Bytes encode_cifar10(std::span<const Sample> samples) {
  Bytes out;
  out.reserve(samples.size() * kCifarRecordSize);
  for (const Sample& s : samples) {
    if (s.image.shape() != kCifarShape || s.label.size() != kCifarClasses || count_set(s.label) != 1) {
      throw ValidationError("CIFAR-10 records need a 32x32x3 image and a one-hot label of length 10");
    }
    const auto cls = static_cast<std::uint8_t>(
        std::find(s.label.begin(), s.label.end(), std::uint8_t{1}) - s.label.begin());
    out.push_back(cls);
    out.insert(out.end(), s.image.data().begin(), s.image.data().end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// SAUG1 batch container.
//
//   offset 0   5 bytes   "SAUG1"
//   offset 5   u32 LE    n          sample count
//   offset 9   u32 LE    h
//   offset 13  u32 LE    w
//   offset 17  u32 LE    c
//   offset 21  u32 LE    label_dim
//   offset 25  n*h*w*c   image bytes, channel-planar per sample
//   then       n*label_dim label bytes, each 0 or 1
//
// An empty container is the 25-byte header with n = 0.

inline constexpr std::array<char, 5> kContainerMagic{'S', 'A', 'U', 'G', '1'};
inline constexpr std::size_t kContainerHeaderSize = kContainerMagic.size() + 5 * 4;

namespace detail {

inline void put_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[offset + i]) << (8 * i);
  return v;
}

inline std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError(std::string(what) + " does not fit in 32 bits");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline Bytes encode_container(std::span<const Sample> samples) {
  Shape shape{};
  std::size_t label_dim = 0;
  if (!samples.empty()) {
    shape = samples.front().image.shape();
    label_dim = samples.front().label.size();
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].image.shape() != shape || samples[i].label.size() != label_dim) {
      throw ValidationError("sample " + std::to_string(i) + " differs in shape or label length");
    }
  }

  Bytes out;
  out.reserve(kContainerHeaderSize + samples.size() * (shape.size() + label_dim));
  out.insert(out.end(), kContainerMagic.begin(), kContainerMagic.end());
  detail::put_u32(out, detail::checked_u32(samples.size(), "sample count"));
  detail::put_u32(out, shape.height);
  detail::put_u32(out, shape.width);
  detail::put_u32(out, shape.channels);
  detail::put_u32(out, detail::checked_u32(label_dim, "label length"));
  for (const Sample& s : samples) {
    out.insert(out.end(), s.image.data().begin(), s.image.data().end());
  }
  for (const Sample& s : samples) {
    for (std::uint8_t v : s.label) {
      if (v > 1) throw ValidationError("label bytes must be 0 or 1");
      out.push_back(v);
    }
  }
  return out;
}

inline std::vector<Sample> decode_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kContainerHeaderSize) {
    throw FormatError("container header truncated: " + std::to_string(bytes.size()) +
                      " of " + std::to_string(kContainerHeaderSize) + " bytes");
  }
  if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin())) {
    throw FormatError("bad magic at offset 0: expected SAUG1, got '" +
                      std::string(bytes.begin(), bytes.begin() + kContainerMagic.size()) + "'");
  }
  const std::uint64_t n = detail::get_u32(bytes, 5);
  const Shape shape{detail::get_u32(bytes, 9), detail::get_u32(bytes, 13), detail::get_u32(bytes, 17)};
  const std::uint64_t label_dim = detail::get_u32(bytes, 21);

  // Each factor is below 2^32, so the products below fit in unsigned __int128.
  const unsigned __int128 image_bytes =
      static_cast<unsigned __int128>(n) * shape.height * shape.width * shape.channels;
  const unsigned __int128 expected = kContainerHeaderSize + image_bytes +
                                     static_cast<unsigned __int128>(n) * label_dim;
  if (expected != bytes.size()) {
    throw FormatError("size mismatch: header declares " +
                      (expected > std::numeric_limits<std::uint64_t>::max()
                           ? std::string("more than 2^64")
                           : std::to_string(static_cast<std::uint64_t>(expected))) +
                      " bytes, file has " + std::to_string(bytes.size()));
  }

  const std::size_t label_base = kContainerHeaderSize + static_cast<std::size_t>(image_bytes);
  for (std::size_t off = label_base; off < bytes.size(); ++off) {
    if (bytes[off] > 1) {
      throw FormatError("label byte " + std::to_string(bytes[off]) + " at offset " +
                        std::to_string(off) + " is not 0 or 1");
    }
  }

  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  const std::size_t image_size = shape.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto img = bytes.subspan(kContainerHeaderSize + i * image_size, image_size);
    const auto lbl = bytes.subspan(label_base + i * label_dim, label_dim);
    samples.push_back({Image(shape, Bytes(img.begin(), img.end())), LabelVector(lbl.begin(), lbl.end())});
  }
  return samples;
}

inline void write_container(std::span<const Sample> samples, const std::filesystem::path& path) {
  write_file(path, encode_container(samples));
}

inline std::vector<Sample> read_container(const std::filesystem::path& path) {
  return decode_container(read_file(path));
}

inline bool has_container_magic(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= kContainerMagic.size() &&
         std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin());
}

/// SAUG1 if the magic matches, CIFAR-10 binary otherwise.
inline std::vector<Sample> read_samples(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  return has_container_magic(bytes) ? decode_container(bytes) : parse_cifar10(bytes);
}

// ---------------------------------------------------------------------------
// Binary PPM (P6, maxval 255). Interleaved RGB on disk, planar in memory.

namespace detail {

class PpmHeaderReader {
 public:
  explicit PpmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') ++pos_;
    if (start == pos_) {
      throw FormatError("PPM header truncated at offset " + std::to_string(pos_));
    }
    return {bytes_.begin() + start, bytes_.begin() + pos_};
  }

  std::uint32_t number(const char* what) {
    const std::size_t at = pos_;
    const std::string t = token();
    std::uint64_t v = 0;
    for (char ch : t) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || v > std::numeric_limits<std::uint32_t>::max()) {
        throw FormatError(std::string("invalid PPM ") + what + " '" + t + "' near offset " +
                          std::to_string(at));
      }
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    if (v > std::numeric_limits<std::uint32_t>::max()) {
      throw FormatError(std::string("PPM ") + what + " too large");
    }
    return static_cast<std::uint32_t>(v);
  }

  /// Consumes the single whitespace byte that ends the header.
  std::size_t body_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("PPM header not terminated at offset " + std::to_string(pos_));
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_{0};
};

}  // namespace detail

inline Image decode_ppm(std::span<const std::uint8_t> bytes) {
  detail::PpmHeaderReader header(bytes);
  const std::string magic = header.token();
  if (magic != "P6") {
    throw FormatError("unsupported PPM variant '" + magic + "', only binary P6 is supported");
  }
  const std::uint32_t width = header.number("width");
  const std::uint32_t height = header.number("height");
  const std::uint32_t maxval = header.number("maxval");
  if (maxval != 255) {
    throw FormatError("unsupported PPM maxval " + std::to_string(maxval) + ", only 255 is supported");
  }
  const std::size_t body = header.body_offset();
  const Shape shape{height, width, 3};
  if (bytes.size() - body != shape.size()) {
    throw FormatError("PPM body has " + std::to_string(bytes.size() - body) + " bytes at offset " +
                      std::to_string(body) + ", expected " + std::to_string(shape.size()));
  }

  Image img(shape);
  const std::size_t plane = shape.plane_size();
  for (std::size_t px = 0; px < plane; ++px) {
    for (std::uint32_t c = 0; c < 3; ++c) {
      img.data()[c * plane + px] = bytes[body + 3 * px + c];
    }
  }
  return img;
}

inline Bytes encode_ppm(const Image& img) {
  if (img.shape().channels != 3) {
    throw ValidationError("PPM output needs 3 channels, got shape " + img.shape().str());
  }
  const std::string header = "P6\n" + std::to_string(img.shape().width) + " " +
                             std::to_string(img.shape().height) + "\n255\n";
  Bytes out(header.begin(), header.end());
  const std::size_t plane = img.shape().plane_size();
  out.reserve(out.size() + img.size());
  for (std::size_t px = 0; px < plane; ++px) {
    for (std::uint32_t c = 0; c < 3; ++c) out.push_back(img.data()[c * plane + px]);
  }
  return out;
}

inline Image read_ppm(const std::filesystem::path& path) { return decode_ppm(read_file(path)); }

inline void write_ppm(const Image& img, const std::filesystem::path& path) {
  write_file(path, encode_ppm(img));
}

// ---------------------------------------------------------------------------
// CSV tables: header row mandatory, LF line endings, RFC 4180 quoting only
// for fields that need it.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Six significant digits, printf %g style.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace detail {

inline void append_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

inline void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    append_field(out, row[i]);
  }
  out += '\n';
}

}  // namespace detail

inline std::string to_csv(const Table& table) {
  if (table.header.empty()) {
    throw ValidationError("CSV table needs a header row");
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.header.size()) {
      throw ValidationError("ragged CSV: row " + std::to_string(r + 1) + " has " +
                            std::to_string(table.rows[r].size()) + " fields, header has " +
                            std::to_string(table.header.size()));
    }
  }
  std::string out;
  detail::append_row(out, table.header);
  for (const auto& row : table.rows) detail::append_row(out, row);
  return out;
}

inline void write_csv(const Table& table, const std::filesystem::path& path) {
  const std::string text = to_csv(table);
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace stegaug
