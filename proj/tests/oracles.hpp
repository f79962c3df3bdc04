#pragma once

// Reference computations used by the tests. Each one takes a different route
// from the library code it checks: per-bit assembly instead of masks,
// division instead of bit tricks, raw normal equations instead of centered
// integer sums.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline int bit(int value, int position) { return (value >> position) & 1; }

/// Builds the stego byte one bit at a time: bits k..7 from the cover, bits
/// 0..k-1 from secret bits 8-k..7.
inline int embed_bitwise(int cover, int secret, int k) {
  int out = 0;
  for (int b = 0; b < 8; ++b) {
    const int v = b >= k ? bit(cover, b) : bit(secret, b + 8 - k);
    out += v * (1 << b);
  }
  return out;
}

inline int quantize_div(int i, int k) {
  const int w = 1 << k;
  return (i / w) * w;
}

inline int mod_pow2(int i, int k) { return i % (1 << k); }

struct Line {
  double alpha;
  double beta;
};

/// Ordinary least squares through the raw 2x2 normal equations
///   [n   Sx ] [beta ]   [Sy ]
///   [Sx  Sxx] [alpha] = [Sxy]
/// solved by Gaussian elimination in long double.
inline Line ols_normal_equations(const std::vector<double>& xs, const std::vector<double>& ys) {
  long double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    n += 1;
    sx += xs[i];
    sxx += static_cast<long double>(xs[i]) * xs[i];
    sy += ys[i];
    sxy += static_cast<long double>(xs[i]) * ys[i];
  }
  long double a00 = n, a01 = sx, b0 = sy;
  long double a10 = sx, a11 = sxx, b1 = sxy;
  const long double f = a10 / a00;
  a11 -= f * a01;
  b1 -= f * b0;
  const long double alpha = b1 / a11;
  const long double beta = (b0 - a01 * alpha) / a00;
  return {static_cast<double>(alpha), static_cast<double>(beta)};
}

inline Line quantize_fit_closed_form(int k) {
  const double alpha = 1.0 - (std::pow(4.0, k) - 1.0) / 65535.0;
  const double beta = -(std::pow(2.0, k) - 1.0) / 2.0 + (1.0 - alpha) * 127.5;
  return {alpha, beta};
}

inline double pearson(const std::vector<double>& observed) {
  double total = 0;
  for (double o : observed) total += o;
  const double e = total / observed.size();
  double stat = 0;
  for (double o : observed) stat += (o - e) * (o - e) / e;
  return stat;
}

/// Round half away from zero, then clamp to [0, 255].
inline int round_clamp(double v) {
  const double r = v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5);
  if (r < 0) return 0;
  if (r > 255) return 255;
  return static_cast<int>(r);
}

inline int brightness(int i, double b) { return round_clamp(i + b); }
inline int contrast(int i, double s) { return round_clamp(128 + s * (i - 128)); }

inline std::array<int, 3> saturation(int r, int g, int b, double c) {
  const double gray = 0.299 * r + 0.587 * g + 0.114 * b;
  return {round_clamp(gray + c * (r - gray)), round_clamp(gray + c * (g - gray)),
          round_clamp(gray + c * (b - gray))};
}

}  // namespace oracle
