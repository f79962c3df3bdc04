#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "stegaug/bitops.hpp"
#include "stegaug/colorops.hpp"
#include "stegaug/error.hpp"
#include "stegaug/image.hpp"

namespace stegaug {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_{0.0};
  double comp_{0.0};
};

// ---------------------------------------------------------------------------
// Level histograms of the k-bit quantizer.

struct LevelHistogram {
  BitDepth k;
  std::map<unsigned, std::uint64_t> counts;  // every level of QuantSpec(k), zero included

  explicit LevelHistogram(BitDepth depth) : k(depth) {
    for (Intensity level : QuantSpec(depth).levels()) counts.emplace(level, 0);
  }

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [level, c] : counts) n += c;
    return n;
  }
};

/// Histogram of quantize(v, k) over an arbitrary intensity population.
inline LevelHistogram quantization_histogram(std::span<const Intensity> pixels, BitDepth k) {
  std::array<std::uint64_t, 256> raw{};
  for (Intensity v : pixels) ++raw[quantize(v, k)];
  LevelHistogram h(k);
  for (auto& [level, c] : h.counts) c = raw[level];
  return h;
}

inline LevelHistogram quantization_histogram(std::span<const Image> images, BitDepth k) {
  std::array<std::uint64_t, 256> raw{};
  for (const Image& img : images) {
    for (Intensity v : img.data()) ++raw[quantize(v, k)];
  }
  LevelHistogram h(k);
  for (auto& [level, c] : h.counts) c = raw[level];
  return h;
}

/// Every intensity in [0, 255] exactly once.
inline LevelHistogram quantization_histogram(BitDepth k) {
  std::array<Intensity, 256> domain{};
  for (unsigned i = 0; i < 256; ++i) domain[i] = static_cast<Intensity>(i);
  return quantization_histogram(std::span<const Intensity>(domain), k);
}

// ---------------------------------------------------------------------------
// Pearson chi-square against the uniform distribution.

struct ChiSquareResult {
  double statistic{0.0};
  unsigned degrees_of_freedom{0};
  double p_value{1.0};
};

/// Upper tail P(X >= x) of a chi-square variable with `dof` degrees of freedom.
inline double chi_square_survival(double x, unsigned dof) {
  if (dof == 0) {
    throw ValidationError("chi-square needs at least one degree of freedom");
  }
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

inline ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) {
    throw ValidationError("uniformity test needs at least two categories");
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) {
    throw ValidationError("uniformity test on an empty population");
  }
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  CompensatedSum stat;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat.add(d * d / expected);
  }
  ChiSquareResult r;
  const bool all_equal = std::all_of(counts.begin(), counts.end(),
                                     [&](std::uint64_t c) { return c == counts.front(); });
  r.statistic = all_equal ? 0.0 : stat.value();
  r.degrees_of_freedom = static_cast<unsigned>(counts.size() - 1);
  r.p_value = chi_square_survival(r.statistic, r.degrees_of_freedom);
  return r;
}

inline ChiSquareResult uniformity_test(const LevelHistogram& h) {
  std::vector<std::uint64_t> counts;
  counts.reserve(h.counts.size());
  for (const auto& [level, c] : h.counts) counts.push_back(c);
  return chi_square_uniform(counts);
}

// ---------------------------------------------------------------------------
// Least-squares fit of i -> quantize(i, k) by alpha * i + beta over [0, 255].

struct LinearFit {
  double alpha_hat{0.0};
  double beta_hat{0.0};
  double rmse{0.0};
  BitDepth k;
};

inline LinearFit fit_linear_approx(BitDepth k) {
  // Centered sums are exact in 64-bit integers on this domain.
  constexpr std::int64_t n = 256;
  std::int64_t sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t q = quantize(static_cast<Intensity>(i), k);
    sx += i;
    sy += q;
    sxx += i * i;
    sxy += i * q;
  }
  const std::int64_t cxx = n * sxx - sx * sx;
  const std::int64_t cxy = n * sxy - sx * sy;
  const double alpha = static_cast<double>(cxy) / static_cast<double>(cxx);
  // beta = (sy - alpha * sx) / n, with alpha kept as a ratio of integers.
  const double beta = static_cast<double>(sy * cxx - cxy * sx) /
                      (static_cast<double>(cxx) * static_cast<double>(n));

  CompensatedSum sq;
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = quantize(static_cast<Intensity>(i), k) - (alpha * i + beta);
    sq.add(r * r);
  }
  return {alpha, beta, std::sqrt(sq.value() / n), k};
}

// ---------------------------------------------------------------------------
// Distance between quantization and the continuous color transforms.

enum class ColorTransform { brightness, contrast, saturation };

inline const char* to_string(ColorTransform t) {
  switch (t) {
    case ColorTransform::brightness: return "brightness";
    case ColorTransform::contrast: return "contrast";
    case ColorTransform::saturation: return "saturation";
  }
  return "unknown";
}

struct ColorErrorRow {
  double param{0.0};
  double mae_continuous{0.0};  // against the real-valued map before clamping
  double mae_rounded{0.0};     // against the clamped integer color op
};

struct ColorErrorTable {
  BitDepth k;
  ColorTransform transform;
  std::vector<ColorErrorRow> rows;
  std::size_t best_index{0};  // smallest mae_continuous, first on ties
};

/// Grid of all 17^3 pixels with channels in {0, 16, ..., 240, 255}.
inline std::vector<RgbPixel> default_pixel_population() {
  std::vector<Intensity> steps;
  for (unsigned v = 0; v < 256; v += 16) steps.push_back(static_cast<Intensity>(v));
  steps.push_back(255);
  std::vector<RgbPixel> out;
  out.reserve(steps.size() * steps.size() * steps.size());
  for (Intensity r : steps)
    for (Intensity g : steps)
      for (Intensity b : steps) out.push_back({r, g, b});
  return out;
}

/// RGB pixels of 3-channel planar images.
inline std::vector<RgbPixel> pixels_of(std::span<const Image> images) {
  std::vector<RgbPixel> out;
  for (const Image& img : images) {
    if (img.shape().channels != 3) {
      throw ValidationError("pixel population needs 3-channel images, got " + img.shape().str());
    }
    const auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < r.size(); ++i) out.push_back({r[i], g[i], b[i]});
  }
  return out;
}

/**
 * Mean absolute difference between quantize(i, k) and a color transform for
 * every parameter of `grid`. Brightness and contrast run over the intensity
 * domain [0, 255]; saturation runs over every channel of `population`.
 */
inline ColorErrorTable color_approx_error(BitDepth k, ColorTransform transform,
                                          std::span<const double> grid,
                                          std::span<const RgbPixel> population = {}) {
  if (grid.empty()) {
    throw ValidationError("color_approx_error needs a non-empty parameter grid");
  }
  if (transform == ColorTransform::saturation && population.empty()) {
    throw ValidationError("saturation error needs a non-empty pixel population");
  }

  ColorErrorTable table{k, transform, {}, 0};
  table.rows.reserve(grid.size());
  for (double param : grid) {
    CompensatedSum cont, rounded;
    std::size_t count = 0;
    switch (transform) {
      case ColorTransform::brightness:
        detail::require_finite(param, "brightness bias");
        for (unsigned i = 0; i < 256; ++i) {
          const double q = quantize(static_cast<Intensity>(i), k);
          cont.add(std::abs(q - (i + param)));
          rounded.add(std::abs(q - brightness(static_cast<Intensity>(i), param)));
        }
        count = 256;
        break;
      case ColorTransform::contrast:
        detail::require_contrast(param);
        for (unsigned i = 0; i < 256; ++i) {
          const double q = quantize(static_cast<Intensity>(i), k);
          cont.add(std::abs(q - (128.0 + param * (i - 128.0))));
          rounded.add(std::abs(q - contrast(static_cast<Intensity>(i), param)));
        }
        count = 256;
        break;
      case ColorTransform::saturation:
        detail::require_saturation(param);
        for (const RgbPixel& px : population) {
          const double gray = grayscale(px);
          const RgbPixel sat = saturation(px, param);
          const std::array<std::pair<Intensity, Intensity>, 3> ch{
              {{px.r, sat.r}, {px.g, sat.g}, {px.b, sat.b}}};
          for (const auto& [v, out] : ch) {
            const double q = quantize(v, k);
            cont.add(std::abs(q - (gray + param * (v - gray))));
            rounded.add(std::abs(q - out));
          }
        }
        count = population.size() * 3;
        break;
    }
    table.rows.push_back({param, cont.value() / static_cast<double>(count),
                          rounded.value() / static_cast<double>(count)});
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].mae_continuous < table.rows[table.best_index].mae_continuous) {
      table.best_index = i;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Bit-plane statistics.

struct BitPlaneStat {
  unsigned plane{0};  // 0 is the least significant bit
  double ones_fraction{0.0};
  double entropy{0.0};  // binary entropy in bits
};

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace detail {

inline void count_ones(std::span<const Intensity> pixels, std::array<std::uint64_t, 8>& ones) {
  for (Intensity v : pixels) {
    for (unsigned b = 0; b < 8; ++b) ones[b] += (v >> b) & 1u;
  }
}

inline std::vector<BitPlaneStat> plane_table(const std::array<std::uint64_t, 8>& ones,
                                             std::uint64_t total) {
  if (total == 0) {
    throw ValidationError("bit-plane statistics need a non-empty population");
  }
  std::vector<BitPlaneStat> out;
  for (unsigned b = 0; b < 8; ++b) {
    const double f = static_cast<double>(ones[b]) / static_cast<double>(total);
    out.push_back({b, f, binary_entropy(f)});
  }
  return out;
}

}  // namespace detail

inline std::vector<BitPlaneStat> bit_plane_stats(std::span<const Intensity> pixels) {
  std::array<std::uint64_t, 8> ones{};
  detail::count_ones(pixels, ones);
  return detail::plane_table(ones, pixels.size());
}

inline std::vector<BitPlaneStat> bit_plane_stats(std::span<const Image> images) {
  std::array<std::uint64_t, 8> ones{};
  std::uint64_t total = 0;
  for (const Image& img : images) {
    detail::count_ones(img.data(), ones);
    total += img.size();
  }
  return detail::plane_table(ones, total);
}

}  // namespace stegaug
