#pragma once

#include <span>
#include <string>
#include <vector>

#include "stegaug/analysis.hpp"
#include "stegaug/dataio.hpp"
#include "stegaug/pipeline.hpp"

namespace stegaug {

// CSV layouts for analysis output and augmentation records.

inline Table levels_table(const LevelHistogram& h) {
  Table t{{"level", "count", "probability"}, {}};
  const double total = static_cast<double>(h.total());
  for (const auto& [level, count] : h.counts) {
    t.rows.push_back({std::to_string(level), std::to_string(count),
                      format_real(total > 0 ? count / total : 0.0)});
  }
  return t;
}

inline Table linfit_table(std::span<const LinearFit> fits) {
  Table t{{"k", "alpha_hat", "beta_hat", "rmse"}, {}};
  for (const LinearFit& f : fits) {
    t.rows.push_back({std::to_string(f.k.value()), format_real(f.alpha_hat),
                      format_real(f.beta_hat), format_real(f.rmse)});
  }
  return t;
}

inline Table color_error_table(std::span<const ColorErrorTable> tables) {
  Table t{{"k", "param", "mae_continuous", "mae_rounded", "best"}, {}};
  for (const ColorErrorTable& ct : tables) {
    for (std::size_t i = 0; i < ct.rows.size(); ++i) {
      const ColorErrorRow& r = ct.rows[i];
      t.rows.push_back({std::to_string(ct.k.value()), format_real(r.param),
                        format_real(r.mae_continuous), format_real(r.mae_rounded),
                        i == ct.best_index ? "1" : "0"});
    }
  }
  return t;
}

struct BitPlaneSeries {
  std::string source;
  std::vector<BitPlaneStat> planes;
};

inline Table bitplane_table(std::span<const BitPlaneSeries> series) {
  Table t{{"source", "plane", "ones_fraction", "entropy"}, {}};
  for (const BitPlaneSeries& s : series) {
    for (const BitPlaneStat& p : s.planes) {
      t.rows.push_back({s.source, std::to_string(p.plane), format_real(p.ones_fraction),
                        format_real(p.entropy)});
    }
  }
  return t;
}

inline Table records_table(std::span<const AugmentationRecord> records) {
  Table t{{"output_index", "kind", "secret_index", "k"}, {}};
  for (const AugmentationRecord& r : records) {
    if (r.is_passthrough()) {
      t.rows.push_back({std::to_string(r.output_index), "passthrough", "", ""});
    } else {
      t.rows.push_back({std::to_string(r.output_index), "steg",
                        std::to_string(r.steg->secret_index), std::to_string(r.steg->k.value())});
    }
  }
  return t;
}

inline Table color_records_table(std::span<const ColorRecord> records) {
  Table t{{"output_index", "kind", "brightness", "contrast", "saturation"}, {}};
  for (const ColorRecord& r : records) {
    if (r.applied) {
      t.rows.push_back({std::to_string(r.output_index), "color", format_real(r.bias),
                        format_real(r.contrast), format_real(r.saturation)});
    } else {
      t.rows.push_back({std::to_string(r.output_index), "passthrough", "", "", ""});
    }
  }
  return t;
}

}  // namespace stegaug
