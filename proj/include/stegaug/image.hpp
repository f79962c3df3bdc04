#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stegaug/error.hpp"

namespace stegaug {

using Intensity = std::uint8_t;

struct Shape {
  std::uint32_t height{0};
  std::uint32_t width{0};
  std::uint32_t channels{0};

  constexpr std::size_t plane_size() const {
    return static_cast<std::size_t>(height) * width;
  }
  constexpr std::size_t size() const { return plane_size() * channels; }

  std::string str() const {
    return std::to_string(height) + "x" + std::to_string(width) + "x" +
           std::to_string(channels);
  }

  friend constexpr bool operator==(const Shape&, const Shape&) = default;
};

inline constexpr Shape kCifarShape{32, 32, 3};

/// H x W x C image of 8-bit intensities in channel-planar order: all of
/// channel 0 row-major, then channel 1, and so on (CIFAR-10 on-disk order).
class Image {
 public:
  Image() = default;

  explicit Image(Shape shape) : shape_(shape), data_(shape.size(), 0) {}

  Image(Shape shape, std::vector<Intensity> data)
      : shape_(shape), data_(std::move(data)) {
    if (data_.size() != shape_.size()) {
      throw ValidationError("image data has " + std::to_string(data_.size()) +
                            " bytes, shape " + shape_.str() + " needs " +
                            std::to_string(shape_.size()));
    }
  }

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<Intensity> data() { return data_; }
  std::span<const Intensity> data() const { return data_; }

  std::span<Intensity> plane(std::uint32_t channel) {
    return data().subspan(channel * shape_.plane_size(), shape_.plane_size());
  }
  std::span<const Intensity> plane(std::uint32_t channel) const {
    return data().subspan(channel * shape_.plane_size(), shape_.plane_size());
  }

  Intensity& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) {
    return data_[index(c, y, x)];
  }
  Intensity at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return data_[index(c, y, x)];
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return c * shape_.plane_size() + static_cast<std::size_t>(y) * shape_.width + x;
  }

  Shape shape_{};
  std::vector<Intensity> data_;
};

}  // namespace stegaug
