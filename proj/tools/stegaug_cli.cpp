// stegaug: command-line front end for the steganographic augmentation engine.
//
// Exit codes: 0 success, 1 I/O or system failure, 2 usage or validation error.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stegaug/stegaug.hpp"

namespace fs = std::filesystem;
using namespace stegaug;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

unsigned default_threads() {
  if (const char* env = std::getenv("STEGAUG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("STEGAUG_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BitDepth> parse_k_choices(const std::string& text) {
  std::vector<BitDepth> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (const auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
      const int lo = std::stoi(item.substr(0, dash));
      const int hi = std::stoi(item.substr(dash + 1));
      if (lo > hi) throw ValidationError("empty depth range '" + item + "'");
      for (int k = lo; k <= hi; ++k) out.emplace_back(k);
    } else {
      out.emplace_back(std::stoi(item));
    }
  }
  if (out.empty()) throw ValidationError("no bit depths given");
  return out;
}

// Wraps std::stoi failures from depth lists as validation errors.
std::vector<BitDepth> k_choices_from(const std::optional<int>& fixed, const std::string& list) {
  if (fixed) return {BitDepth(*fixed)};
  try {
    return parse_k_choices(list);
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed depth list '" + list + "'");
  } catch (const std::out_of_range&) {
    throw ValidationError("malformed depth list '" + list + "'");
  }
}

struct Options {
  // shared
  std::string input;
  std::string output;
  std::optional<int> k;
  std::string k_choices{"1-7"};
  double p{0.5};
  std::uint64_t seed{0};
  std::optional<unsigned> threads;
  // ingest
  std::vector<std::string> inputs;
  // embed
  std::string cover;
  std::string secret;
  // augment
  std::string records;
  std::string mode{"steg"};
  double brightness{32.0};
  double contrast{0.2};
  double saturation{0.2};
  // analyze
  std::string population;
  // bench
  unsigned repetitions{5};
};

unsigned resolve_threads(const Options& o) {
  if (o.threads) {
    if (*o.threads == 0) throw ValidationError("--threads must be >= 1");
    return *o.threads;
  }
  return default_threads();
}

int cmd_ingest(const Options& o) {
  std::vector<Sample> all;
  for (const std::string& path : o.inputs) {
    auto part = read_cifar10(path);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  write_container(all, o.output);
  std::cout << "wrote " << all.size() << " samples to " << o.output << "\n";
  return kExitOk;
}

int cmd_embed(const Options& o) {
  const BitDepth k(*o.k);
  const Image cover = read_ppm(o.cover);
  const Image secret = read_ppm(o.secret);
  write_ppm(embed_image(cover, secret, k), o.output);
  return kExitOk;
}

int cmd_extract(const Options& o) {
  const BitDepth k(*o.k);
  write_ppm(extract_image(read_ppm(o.input), k), o.output);
  return kExitOk;
}

int cmd_augment(const Options& o) {
  const unsigned threads = resolve_threads(o);
  const std::vector<Sample> batch = read_samples(o.input);

  if (o.mode == "color") {
    ColorJitterParams params;
    params.p = o.p;
    params.seed = o.seed;
    params.brightness = o.brightness;
    params.contrast = o.contrast;
    params.saturation = o.saturation;
    const ColorJitterResult result = color_jitter_batch(batch, params, threads);
    write_container(result.batch, o.output);
    if (!o.records.empty()) write_csv(color_records_table(result.records), o.records);
    return kExitOk;
  }

  StegParams params;
  params.p = o.p;
  params.seed = o.seed;
  params.k_choices = k_choices_from(o.k, o.k_choices);
  const AugmentResult result = augment_batch(batch, params, threads);
  write_container(result.batch, o.output);
  if (!o.records.empty()) write_csv(records_table(result.records), o.records);

  std::size_t steg = 0;
  for (const auto& r : result.records) steg += r.is_passthrough() ? 0 : 1;
  std::cout << "augmented " << steg << " of " << result.batch.size() << " samples\n";
  return kExitOk;
}

int cmd_analyze(const Options& o) {
  const std::vector<BitDepth> depths = k_choices_from(o.k, o.k_choices);
  const fs::path outdir = o.output;
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create " + outdir.string() + ": " + ec.message());

  std::vector<Sample> population;
  if (!o.population.empty()) population = read_samples(o.population);
  std::vector<Image> images;
  images.reserve(population.size());
  for (const Sample& s : population) images.push_back(s.image);

  std::vector<LinearFit> fits;
  std::vector<ColorErrorTable> bright, contr, sat;
  const std::vector<RgbPixel> pixels =
      images.empty() ? default_pixel_population() : pixels_of(images);

  std::vector<double> contrast_grid, saturation_grid;
  for (int i = 10; i <= 30; ++i) contrast_grid.push_back(i * 0.05);
  for (int i = 0; i <= 20; ++i) saturation_grid.push_back(i * 0.1);

  for (BitDepth k : depths) {
    const LevelHistogram h = images.empty() ? quantization_histogram(k)
                                            : quantization_histogram(std::span<const Image>(images), k);
    write_csv(levels_table(h), outdir / ("levels_k" + std::to_string(k.value()) + ".csv"));
    fits.push_back(fit_linear_approx(k));

    // Bias grid over [-2^k, 0] in steps of 0.5; contains the centered bias.
    std::vector<double> bias_grid;
    for (int b = -2 * static_cast<int>(k.bin_width()); b <= 0; ++b) bias_grid.push_back(b * 0.5);
    bright.push_back(color_approx_error(k, ColorTransform::brightness, bias_grid));
    contr.push_back(color_approx_error(k, ColorTransform::contrast, contrast_grid));
    sat.push_back(color_approx_error(k, ColorTransform::saturation, saturation_grid, pixels));
  }
  write_csv(linfit_table(fits), outdir / "linfit.csv");
  write_csv(color_error_table(bright), outdir / "color_err_brightness.csv");
  write_csv(color_error_table(contr), outdir / "color_err_contrast.csv");
  write_csv(color_error_table(sat), outdir / "color_err_saturation.csv");

  std::vector<BitPlaneSeries> series;
  if (images.empty()) {
    std::vector<Intensity> domain(256);
    for (unsigned i = 0; i < 256; ++i) domain[i] = static_cast<Intensity>(i);
    series.push_back({"full_domain", bit_plane_stats(std::span<const Intensity>(domain))});
  } else {
    series.push_back({"population", bit_plane_stats(std::span<const Image>(images))});
    // Each image embeds its cyclic successor.
    for (BitDepth k : depths) {
      std::vector<Image> stego;
      stego.reserve(images.size());
      for (std::size_t i = 0; i < images.size(); ++i) {
        stego.push_back(embed_image(images[i], images[(i + 1) % images.size()], k));
      }
      series.push_back({"stego_k" + std::to_string(k.value()),
                        bit_plane_stats(std::span<const Image>(stego))});
    }
  }
  write_csv(bitplane_table(series), outdir / "bitplanes.csv");
  std::cout << "wrote analysis tables to " << outdir.string() << "\n";
  return kExitOk;
}

int cmd_bench(const Options& o) {
  if (o.repetitions == 0) throw ValidationError("--repetitions must be >= 1");
  const unsigned threads = resolve_threads(o);
  const std::vector<Sample> batch = read_samples(o.input);
  StegParams params;
  params.p = o.p;
  params.seed = o.seed;
  params.k_choices = k_choices_from(o.k, o.k_choices);

  std::size_t bytes_per_pass = 0;
  for (const Sample& s : batch) bytes_per_pass += s.image.size();

  auto run = [&](unsigned workers) {
    const auto start = std::chrono::steady_clock::now();
    for (unsigned r = 0; r < o.repetitions; ++r) {
      StegParams rep = params;
      rep.seed = params.seed + r;
      const AugmentResult out = augment_batch(batch, rep, workers);
      if (out.batch.size() != batch.size()) throw Error("size changed during bench");
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const double samples = static_cast<double>(batch.size()) * o.repetitions;
    const double bytes = static_cast<double>(bytes_per_pass) * o.repetitions;
    std::cout << "threads=" << workers << " samples=" << batch.size() << " repetitions=" << o.repetitions
              << " p=" << params.p << " seconds=" << elapsed.count()
              << " samples_per_second=" << samples / elapsed.count()
              << " bytes_per_second=" << bytes / elapsed.count() << "\n";
  };
  run(1);
  if (threads > 1) run(threads);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steganographic data augmentation engine"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Convert CIFAR-10 binary batches into a SAUG1 container");
  ingest->add_option("inputs", o.inputs, "CIFAR-10 .bin files")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", o.output, "Output container")->required();

  auto* embed = app.add_subcommand("embed", "Embed the top k bits of a secret PPM into a cover PPM");
  embed->add_option("cover", o.cover, "Cover image (P6)")->required();
  embed->add_option("secret", o.secret, "Secret image (P6)")->required();
  embed->add_option("--k", o.k, "Bit depth in [1, 7]")->required();
  embed->add_option("--out", o.output, "Output PPM")->required();

  auto* extract = app.add_subcommand("extract", "Recover the embedded secret from a stego PPM");
  extract->add_option("stego", o.input, "Stego image (P6)")->required();
  extract->add_option("--k", o.k, "Bit depth used when embedding")->required();
  extract->add_option("--out", o.output, "Output PPM")->required();

  auto* augment = app.add_subcommand("augment", "Augment a SAUG1 container or CIFAR-10 batch");
  augment->add_option("input", o.input, "SAUG1 container or CIFAR-10 .bin")->required();
  augment->add_option("--out", o.output, "Output container")->required();
  augment->add_option("--p", o.p, "Per-sample application probability")->capture_default_str();
  augment->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  auto* aug_k = augment->add_option("--k", o.k, "Fixed bit depth");
  augment->add_option("--k-choices", o.k_choices, "Depths sampled uniformly, e.g. 1-7 or 2,3,5")
      ->capture_default_str()
      ->excludes(aug_k);
  augment->add_option("--threads", o.threads, "Worker threads (default: STEGAUG_THREADS or all cores)");
  augment->add_option("--records", o.records, "Write per-sample provenance CSV");
  augment->add_option("--mode", o.mode, "steg or color")
      ->check(CLI::IsMember({"steg", "color"}))
      ->capture_default_str();
  augment->add_option("--brightness", o.brightness, "Color mode: max |bias|")->capture_default_str();
  augment->add_option("--contrast", o.contrast, "Color mode: factor spread around 1")->capture_default_str();
  augment->add_option("--saturation", o.saturation, "Color mode: factor spread around 1")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Write quantization analysis tables as CSV");
  auto* an_k = analyze->add_option("--k", o.k, "Single bit depth");
  analyze->add_option("--k-choices,--k-range", o.k_choices, "Bit depths, e.g. 1-7")
      ->capture_default_str()
      ->excludes(an_k);
  analyze->add_option("--population", o.population, "Container or CIFAR-10 file to analyze");
  analyze->add_option("--out", o.output, "Output directory")->required();
  analyze->add_option("--threads", o.threads, "Accepted for symmetry; analysis is single-threaded");

  auto* bench = app.add_subcommand("bench", "Report augmentation throughput");
  bench->add_option("input", o.input, "SAUG1 container or CIFAR-10 .bin")->required();
  bench->add_option("--p", o.p, "Application probability")->capture_default_str();
  bench->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  auto* bench_k = bench->add_option("--k", o.k, "Fixed bit depth");
  bench->add_option("--k-choices", o.k_choices, "Depths sampled uniformly")->excludes(bench_k);
  bench->add_option("--repetitions", o.repetitions, "Passes per thread setting")->capture_default_str();
  bench->add_option("--threads", o.threads, "Worker threads for the parallel pass");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(o);
    if (*embed) return cmd_embed(o);
    if (*extract) return cmd_extract(o);
    if (*augment) return cmd_augment(o);
    if (*analyze) return cmd_analyze(o);
    if (*bench) return cmd_bench(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
