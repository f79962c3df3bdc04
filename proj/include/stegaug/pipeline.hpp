#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stegaug/bitops.hpp"
#include "stegaug/colorops.hpp"
#include "stegaug/error.hpp"
#include "stegaug/image.hpp"
#include "stegaug/parallel.hpp"
#include "stegaug/rng.hpp"

namespace stegaug {

/// Multi-hot class vector; entries are 0 or 1.
using LabelVector = std::vector<std::uint8_t>;

inline constexpr std::size_t kCifarClasses = 10;

inline LabelVector one_hot(std::size_t cls, std::size_t dim = kCifarClasses) {
  if (cls >= dim) {
    throw ValidationError("class " + std::to_string(cls) + " out of range for " +
                          std::to_string(dim) + " classes");
  }
  LabelVector v(dim, 0);
  v[cls] = 1;
  return v;
}

inline std::size_t count_set(const LabelVector& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

struct Sample {
  Image image;
  LabelVector label;

  friend bool operator==(const Sample&, const Sample&) = default;
};

using Batch = std::vector<Sample>;

/// Element-wise OR of two multi-hot vectors.
inline LabelVector fuse_labels(const LabelVector& a, const LabelVector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("label length mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
  LabelVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 1 || b[i] > 1) {
      throw ValidationError("label entries must be 0 or 1");
    }
    out[i] = static_cast<std::uint8_t>(a[i] | b[i]);
  }
  return out;
}

inline std::vector<BitDepth> all_depths() {
  std::vector<BitDepth> out;
  for (int k = BitDepth::kMin; k <= BitDepth::kMax; ++k) out.emplace_back(k);
  return out;
}

struct StegParams {
  double p{0.5};
  std::vector<BitDepth> k_choices{all_depths()};
  std::uint64_t seed{0};

  /// Checks invariants and returns a copy with k_choices sorted ascending.
  StegParams validated() const {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("probability p must be in [0, 1], got " + std::to_string(p));
    }
    if (k_choices.empty()) {
      throw ValidationError("k_choices must not be empty");
    }
    StegParams out = *this;
    std::sort(out.k_choices.begin(), out.k_choices.end());
    if (std::adjacent_find(out.k_choices.begin(), out.k_choices.end()) != out.k_choices.end()) {
      throw ValidationError("k_choices contains duplicates");
    }
    return out;
  }
};

struct AugmentationRecord {
  struct Steg {
    std::size_t secret_index;
    BitDepth k;

    friend constexpr bool operator==(const Steg&, const Steg&) = default;
  };

  std::size_t output_index{0};
  std::optional<Steg> steg;  // empty for passthrough

  bool is_passthrough() const { return !steg.has_value(); }

  friend bool operator==(const AugmentationRecord&, const AugmentationRecord&) = default;
};

struct AugmentResult {
  Batch batch;
  std::vector<AugmentationRecord> records;
};

/// Uniform draw over `choices`, consuming one bounded draw from the stream.
inline BitDepth sample_k(DecisionStream& stream, std::span<const BitDepth> choices) {
  if (choices.empty()) {
    throw ValidationError("k_choices must not be empty");
  }
  return choices[static_cast<std::size_t>(stream.below(choices.size()))];
}

/// What the pipeline does at one index. All three draws are taken in order
/// (apply coin, partner, depth) whether or not the augmentation applies.
struct SampleDecision {
  bool apply;
  std::size_t partner;
  BitDepth k;
};

inline SampleDecision decide(const StegParams& params, std::size_t index, std::size_t batch_size) {
  DecisionStream stream(params.seed, index);
  const double u = stream.uniform01();
  auto partner = static_cast<std::size_t>(stream.below(batch_size - 1));
  if (partner >= index) ++partner;
  const BitDepth k = sample_k(stream, params.k_choices);
  return {u < params.p, partner, k};
}

inline void validate_batch(const Batch& batch, std::size_t min_size) {
  if (batch.size() < min_size) {
    throw ValidationError("batch needs at least " + std::to_string(min_size) +
                          " samples, got " + std::to_string(batch.size()));
  }
  if (batch.empty()) return;
  const Shape shape = batch.front().image.shape();
  const std::size_t label_dim = batch.front().label.size();
  for (std::size_t i = 1; i < batch.size(); ++i) {
    if (batch[i].image.shape() != shape) {
      throw ValidationError("sample " + std::to_string(i) + " has shape " +
                            batch[i].image.shape().str() + ", expected " + shape.str());
    }
    if (batch[i].label.size() != label_dim) {
      throw ValidationError("sample " + std::to_string(i) + " has label length " +
                            std::to_string(batch[i].label.size()) + ", expected " +
                            std::to_string(label_dim));
    }
  }
}

/**
 * Steganographic batch augmentation.
 *
 * With probability p each sample i is replaced by embed_image(image_i,
 * image_j, k) carrying fuse_labels(label_i, label_j), where the partner j is
 * uniform over the other indices of the same batch and k is uniform over
 * params.k_choices. The output has the same size as the input. Results are
 * identical for every `threads` value.
 */
inline AugmentResult augment_batch(const Batch& batch, const StegParams& params,
                                   unsigned threads = 1) {
  const StegParams checked = params.validated();
  validate_batch(batch, 2);

  AugmentResult result;
  result.batch.resize(batch.size());
  result.records.resize(batch.size());
  parallel_for(batch.size(), threads, [&](std::size_t i) {
    const SampleDecision d = decide(checked, i, batch.size());
    AugmentationRecord& rec = result.records[i];
    rec.output_index = i;
    if (!d.apply) {
      result.batch[i] = batch[i];
      return;
    }
    const Sample& secret = batch[d.partner];
    result.batch[i] = Sample{embed_image(batch[i].image, secret.image, d.k),
                             fuse_labels(batch[i].label, secret.label)};
    rec.steg = AugmentationRecord::Steg{d.partner, d.k};
  });
  return result;
}

/// Rebuilds an augmented batch from its input and records.
inline Batch replay_records(const Batch& batch, std::span<const AugmentationRecord> records) {
  if (records.size() != batch.size()) {
    throw ValidationError("record count does not match batch size");
  }
  Batch out;
  out.reserve(batch.size());
  for (const AugmentationRecord& rec : records) {
    const Sample& cover = batch.at(rec.output_index);
    if (rec.is_passthrough()) {
      out.push_back(cover);
      continue;
    }
    const Sample& secret = batch.at(rec.steg->secret_index);
    out.push_back({embed_image(cover.image, secret.image, rec.steg->k),
                   fuse_labels(cover.label, secret.label)});
  }
  return out;
}

// Color jitter: the continuous baseline, exposed through the same
// decision-stream contract. Draw order per index: apply coin, brightness
// bias, contrast factor, saturation factor.

struct ColorJitterParams {
  double p{0.5};
  double brightness{32.0};  // bias drawn from [-brightness, brightness)
  double contrast{0.2};     // factor drawn from [1 - contrast, 1 + contrast)
  double saturation{0.2};   // factor drawn from [max(0, 1 - saturation), 1 + saturation)
  std::uint64_t seed{0};

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("probability p must be in [0, 1], got " + std::to_string(p));
    }
    if (!(brightness >= 0.0) || !std::isfinite(brightness)) {
      throw ValidationError("brightness range must be finite and >= 0");
    }
    if (!(contrast >= 0.0 && contrast < 1.0)) {
      throw ValidationError("contrast range must be in [0, 1)");
    }
    if (!(saturation >= 0.0) || !std::isfinite(saturation)) {
      throw ValidationError("saturation range must be finite and >= 0");
    }
  }
};

struct ColorRecord {
  std::size_t output_index{0};
  bool applied{false};
  double bias{0.0};
  double contrast{1.0};
  double saturation{1.0};
};

struct ColorJitterResult {
  Batch batch;
  std::vector<ColorRecord> records;
};

inline ColorJitterResult color_jitter_batch(const Batch& batch, const ColorJitterParams& params,
                                            unsigned threads = 1) {
  params.validate();
  validate_batch(batch, 0);

  ColorJitterResult result;
  result.batch.resize(batch.size());
  result.records.resize(batch.size());
  parallel_for(batch.size(), threads, [&](std::size_t i) {
    DecisionStream stream(params.seed, i);
    ColorRecord& rec = result.records[i];
    rec.output_index = i;
    rec.applied = stream.uniform01() < params.p;
    const double bias = stream.uniform(-params.brightness, params.brightness);
    const double s = stream.uniform(1.0 - params.contrast, 1.0 + params.contrast);
    const double c = stream.uniform(std::max(0.0, 1.0 - params.saturation), 1.0 + params.saturation);
    if (!rec.applied) {
      result.batch[i] = batch[i];
      return;
    }
    rec.bias = bias;
    rec.contrast = s;
    Image img = contrast_image(brightness_image(batch[i].image, bias), s);
    if (img.shape().channels == 3) {
      img = saturation_image(img, c);
      rec.saturation = c;
    }
    result.batch[i] = Sample{std::move(img), batch[i].label};
  });
  return result;
}

}  // namespace stegaug
