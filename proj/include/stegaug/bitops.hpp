#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "stegaug/error.hpp"
#include "stegaug/image.hpp"

namespace stegaug {

/// Number of low-order bits replaced by an embedding, restricted to [1, 7].
/// Depth 0 would leave the cover untouched and depth 8 would discard it, so
/// both are rejected at construction.
class BitDepth {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 7;

  constexpr explicit BitDepth(int k) : k_(k) {
    if (k < kMin || k > kMax) {
      throw ValidationError("bit depth must be in [1, 7], got " + std::to_string(k));
    }
  }

  constexpr int value() const { return k_; }
  constexpr unsigned bin_width() const { return 1u << k_; }
  constexpr std::uint8_t low_mask() const {
    return static_cast<std::uint8_t>(bin_width() - 1);
  }

  /// Depth 8 - k: the number of secret bits that survive an embedding.
  constexpr BitDepth complement() const { return BitDepth(8 - k_); }

  friend constexpr auto operator<=>(BitDepth, BitDepth) = default;

 private:
  int k_;
};

/// Level structure of the k-bit quantizer: 256 / 2^k bins of width 2^k with
/// levels {0, 2^k, ..., 256 - 2^k}.
struct QuantSpec {
  BitDepth depth;

  constexpr explicit QuantSpec(BitDepth k) : depth(k) {}

  constexpr unsigned bin_width() const { return depth.bin_width(); }
  constexpr unsigned level_count() const { return 256u / bin_width(); }
  constexpr unsigned max_level() const { return 256u - bin_width(); }

  constexpr bool is_level(unsigned value) const {
    return value <= max_level() && value % bin_width() == 0;
  }

  std::vector<Intensity> levels() const {
    std::vector<Intensity> out;
    out.reserve(level_count());
    for (unsigned v = 0; v <= max_level(); v += bin_width()) {
      out.push_back(static_cast<Intensity>(v));
    }
    return out;
  }
};

/// floor(i / 2^k) * 2^k
constexpr Intensity quantize(Intensity i, BitDepth k) {
  return static_cast<Intensity>(i & ~k.low_mask());
}

/// i - quantize(i, k), i.e. i mod 2^k.
constexpr Intensity delta_i(Intensity i, BitDepth k) {
  return static_cast<Intensity>(i & k.low_mask());
}

/// Clears the k low bits of `cover` and stores the k high bits of `secret`
/// there, right-aligned.
constexpr Intensity embed_lsb(Intensity cover, Intensity secret, BitDepth k) {
  return static_cast<Intensity>(quantize(cover, k) | (secret >> (8 - k.value())));
}

/// Moves the k low bits back to the top. For stego = embed_lsb(c, s, k) the
/// result is quantize(s, 8 - k).
constexpr Intensity extract_secret(Intensity stego, BitDepth k) {
  return static_cast<Intensity>(delta_i(stego, k) << (8 - k.value()));
}

inline Image embed_image(const Image& cover, const Image& secret, BitDepth k) {
  if (cover.shape() != secret.shape()) {
    throw ValidationError("shape mismatch: cover " + cover.shape().str() +
                          " vs secret " + secret.shape().str());
  }
  Image out(cover.shape());
  std::transform(cover.data().begin(), cover.data().end(), secret.data().begin(),
                 out.data().begin(),
                 [k](Intensity c, Intensity s) { return embed_lsb(c, s, k); });
  return out;
}

inline Image extract_image(const Image& stego, BitDepth k) {
  Image out(stego.shape());
  std::transform(stego.data().begin(), stego.data().end(), out.data().begin(),
                 [k](Intensity v) { return extract_secret(v, k); });
  return out;
}

inline Image quantize_image(const Image& img, BitDepth k) {
  Image out(img.shape());
  std::transform(img.data().begin(), img.data().end(), out.data().begin(),
                 [k](Intensity v) { return quantize(v, k); });
  return out;
}

}  // namespace stegaug
