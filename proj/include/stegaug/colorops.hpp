#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "stegaug/error.hpp"
#include "stegaug/image.hpp"

namespace stegaug {

// Continuous per-channel color transforms in RGB space. Every transform is
// evaluated in real arithmetic, rounded half away from zero and clamped to
// [0, 255] only when converted back to an intensity.

struct RgbPixel {
  Intensity r{0};
  Intensity g{0};
  Intensity b{0};

  friend constexpr bool operator==(const RgbPixel&, const RgbPixel&) = default;
};

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
}

inline void require_contrast(double s) {
  require_finite(s, "contrast factor");
  if (!(s > 0.0)) {
    throw ValidationError("contrast factor must be > 0, got " + std::to_string(s));
  }
}

inline void require_saturation(double c) {
  require_finite(c, "saturation factor");
  if (!(c >= 0.0)) {
    throw ValidationError("saturation factor must be >= 0, got " + std::to_string(c));
  }
}

}  // namespace detail

/// Rounds half away from zero, then clamps into [0, 255].
inline Intensity to_intensity(double v) {
  return static_cast<Intensity>(std::clamp(std::round(v), 0.0, 255.0));
}

/// alpha * i + beta before rounding and clamping.
constexpr double linear_map(double i, double alpha, double beta) {
  return alpha * i + beta;
}

inline Intensity linear_color(Intensity i, double alpha, double beta) {
  detail::require_finite(alpha, "alpha");
  detail::require_finite(beta, "beta");
  return to_intensity(linear_map(i, alpha, beta));
}

inline Intensity brightness(Intensity i, double bias) {
  detail::require_finite(bias, "brightness bias");
  return to_intensity(i + bias);
}

inline Intensity contrast(Intensity i, double s) {
  detail::require_contrast(s);
  return to_intensity(128.0 + s * (i - 128.0));
}

/// Luma weights 0.299 / 0.587 / 0.114; unclamped.
constexpr double grayscale(RgbPixel p) {
  return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
}

inline RgbPixel saturation(RgbPixel p, double c) {
  detail::require_saturation(c);
  const double gray = grayscale(p);
  auto channel = [&](Intensity v) { return to_intensity(gray + c * (v - gray)); };
  return {channel(p.r), channel(p.g), channel(p.b)};
}

inline Image brightness_image(const Image& img, double bias) {
  detail::require_finite(bias, "brightness bias");
  Image out(img.shape());
  std::transform(img.data().begin(), img.data().end(), out.data().begin(),
                 [bias](Intensity v) { return to_intensity(v + bias); });
  return out;
}

inline Image contrast_image(const Image& img, double s) {
  detail::require_contrast(s);
  Image out(img.shape());
  std::transform(img.data().begin(), img.data().end(), out.data().begin(),
                 [s](Intensity v) { return to_intensity(128.0 + s * (v - 128.0)); });
  return out;
}

/// Requires a 3-channel image with planes ordered R, G, B.
inline Image saturation_image(const Image& img, double c) {
  detail::require_saturation(c);
  if (img.shape().channels != 3) {
    throw ValidationError("saturation needs 3 channels, got shape " + img.shape().str());
  }
  Image out(img.shape());
  const auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
  auto ro = out.plane(0), go = out.plane(1), bo = out.plane(2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const RgbPixel px = saturation({r[i], g[i], b[i]}, c);
    ro[i] = px.r;
    go[i] = px.g;
    bo[i] = px.b;
  }
  return out;
}

}  // namespace stegaug
