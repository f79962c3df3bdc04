#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "stegaug/stegaug.hpp"
#include "test_util.hpp"

using namespace stegaug;
using testutil::run_cli;

namespace {

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(CliEmbed, RoundTripThroughExtract) {
  testutil::TempDir dir;
  std::mt19937_64 rng(41);
  const Image cover = testutil::random_image(rng);
  const Image secret = testutil::random_image(rng);
  write_ppm(cover, dir / "c.ppm");
  write_ppm(secret, dir / "s.ppm");
  ASSERT_EQ(run_cli("embed " + q(dir / "c.ppm") + " " + q(dir / "s.ppm") + " --k 3 --out " + q(dir / "o.ppm")), 0);
  ASSERT_EQ(run_cli("extract " + q(dir / "o.ppm") + " --k 3 --out " + q(dir / "x.ppm")), 0);
  EXPECT_EQ(read_ppm(dir / "o.ppm"), embed_image(cover, secret, BitDepth(3)));
  EXPECT_EQ(read_ppm(dir / "x.ppm"), quantize_image(secret, BitDepth(5)));
}

TEST(CliEmbed, UsageAndValidationErrors) {
  testutil::TempDir dir;
  std::mt19937_64 rng(42);
  write_ppm(testutil::random_image(rng), dir / "a.ppm");
  write_ppm(testutil::random_image(rng, Shape{16, 16, 3}), dir / "b.ppm");
  EXPECT_EQ(run_cli("embed " + q(dir / "a.ppm") + " " + q(dir / "b.ppm") + " --k 3 --out " + q(dir / "o.ppm")), 2);
  EXPECT_EQ(run_cli("embed " + q(dir / "a.ppm") + " " + q(dir / "a.ppm") + " --k 8 --out " + q(dir / "o.ppm")), 2);
  EXPECT_EQ(run_cli("embed " + q(dir / "missing.ppm") + " " + q(dir / "a.ppm") + " --k 2 --out " + q(dir / "o.ppm")), 1);
  EXPECT_EQ(run_cli("nosuchcommand"), 2);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST(CliAugment, ProbabilityZeroReserializesInput) {
  testutil::TempDir dir;
  const Batch batch = testutil::random_batch(20, 43);
  write_container(batch, dir / "in.saug");
  ASSERT_EQ(run_cli("augment " + q(dir / "in.saug") + " --out " + q(dir / "out.saug") + " --p 0"), 0);
  EXPECT_EQ(read_file(dir / "out.saug"), read_file(dir / "in.saug"));
}

TEST(CliAugment, AcceptsCifarInputAndWritesRecords) {
  testutil::TempDir dir;
  const Batch batch = testutil::random_batch(30, 44);
  write_file(dir / "data.bin", encode_cifar10(batch));
  ASSERT_EQ(run_cli("augment " + q(dir / "data.bin") + " --out " + q(dir / "out.saug") +
                    " --p 1 --seed 9 --k-choices 2,4 --records " + q(dir / "rec.csv")),
            0);
  StegParams params;
  params.p = 1.0;
  params.seed = 9;
  params.k_choices = {BitDepth(2), BitDepth(4)};
  const AugmentResult expected = augment_batch(batch, params);
  EXPECT_EQ(read_container(dir / "out.saug"), expected.batch);

  const auto lines = lines_of(dir / "rec.csv");
  ASSERT_EQ(lines.size(), 31u);
  EXPECT_EQ(lines[0], "output_index,kind,secret_index,k");
  const auto& r0 = expected.records[0];
  EXPECT_EQ(lines[1], "0,steg," + std::to_string(r0.steg->secret_index) + "," + std::to_string(r0.steg->k.value()));
}

TEST(CliAugment, RejectsTinyBatchAndConflictingFlags) {
  testutil::TempDir dir;
  write_container(testutil::random_batch(1, 45), dir / "one.saug");
  write_container(testutil::random_batch(4, 45), dir / "four.saug");
  EXPECT_EQ(run_cli("augment " + q(dir / "one.saug") + " --out " + q(dir / "o.saug")), 2);
  EXPECT_EQ(run_cli("augment " + q(dir / "four.saug") + " --out " + q(dir / "o.saug") + " --k 3 --k-choices 1-7"), 2);
  EXPECT_EQ(run_cli("augment " + q(dir / "four.saug") + " --out " + q(dir / "o.saug") + " --k-choices 0-3"), 2);
  EXPECT_EQ(run_cli("augment " + q(dir / "four.saug") + " --out " + q(dir / "o.saug") + " --p 1.5"), 2);
  EXPECT_EQ(run_cli("augment " + q(dir / "four.saug") + " --out " + q(dir / "o.saug") + " --threads 0"), 2);
}

TEST(CliAugment, ThreadsFlagAndEnvironmentAgree) {
  testutil::TempDir dir;
  write_container(testutil::random_batch(64, 46), dir / "in.saug");
  const std::string base = "augment " + q(dir / "in.saug") + " --seed 5 --out ";
  ASSERT_EQ(run_cli(base + q(dir / "a.saug") + " --threads 1"), 0);
  ASSERT_EQ(run_cli(base + q(dir / "b.saug") + " --threads 4"), 0);
  ASSERT_EQ(run_cli("--version"), 0);
  setenv("STEGAUG_THREADS", "3", 1);
  ASSERT_EQ(run_cli(base + q(dir / "c.saug")), 0);
  unsetenv("STEGAUG_THREADS");
  EXPECT_EQ(read_file(dir / "a.saug"), read_file(dir / "b.saug"));
  EXPECT_EQ(read_file(dir / "a.saug"), read_file(dir / "c.saug"));
}

TEST(CliAugment, ColorMode) {
  testutil::TempDir dir;
  const Batch batch = testutil::random_batch(10, 47);
  write_container(batch, dir / "in.saug");
  ASSERT_EQ(run_cli("augment " + q(dir / "in.saug") + " --mode color --p 1 --seed 2 --out " + q(dir / "o.saug") +
                    " --records " + q(dir / "r.csv")),
            0);
  ColorJitterParams params;
  params.p = 1.0;
  params.seed = 2;
  EXPECT_EQ(read_container(dir / "o.saug"), color_jitter_batch(batch, params).batch);
  EXPECT_EQ(lines_of(dir / "r.csv").size(), 11u);
}

TEST(CliIngest, ConcatenatesCifarFiles) {
  testutil::TempDir dir;
  const Batch a = testutil::random_batch(3, 48), b = testutil::random_batch(2, 49);
  write_file(dir / "a.bin", encode_cifar10(a));
  write_file(dir / "b.bin", encode_cifar10(b));
  ASSERT_EQ(run_cli("ingest " + q(dir / "a.bin") + " " + q(dir / "b.bin") + " --out " + q(dir / "all.saug")), 0);
  Batch both = a;
  both.insert(both.end(), b.begin(), b.end());
  EXPECT_EQ(read_container(dir / "all.saug"), both);

  write_file(dir / "bad.bin", Bytes(3072, 0));
  EXPECT_EQ(run_cli("ingest " + q(dir / "bad.bin") + " --out " + q(dir / "x.saug")), 2);
}

TEST(CliAnalyze, WritesAllTableFamilies) {
  testutil::TempDir dir;
  const auto out = dir / "nested" / "out";
  ASSERT_EQ(run_cli("analyze --k-range 1-7 --out " + q(out)), 0);
  for (int k = 1; k <= 7; ++k) {
    EXPECT_TRUE(std::filesystem::exists(out / ("levels_k" + std::to_string(k) + ".csv")));
  }
  for (const char* f : {"linfit.csv", "color_err_brightness.csv", "color_err_contrast.csv",
                        "color_err_saturation.csv", "bitplanes.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(out / f)) << f;
  }
  const auto levels = lines_of(out / "levels_k3.csv");
  ASSERT_EQ(levels.size(), 33u);
  EXPECT_EQ(levels[0], "level,count,probability");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    EXPECT_EQ(levels[i], std::to_string((i - 1) * 8) + ",8,0.03125");
  }
  EXPECT_EQ(lines_of(out / "linfit.csv").size(), 8u);
}

TEST(CliAnalyze, PopulationAndErrors) {
  testutil::TempDir dir;
  write_container(testutil::random_batch(5, 50), dir / "pop.saug");
  ASSERT_EQ(run_cli("analyze --k 3 --population " + q(dir / "pop.saug") + " --out " + q(dir / "o")), 0);
  const auto planes = lines_of(dir / "o" / "bitplanes.csv");
  EXPECT_EQ(planes.size(), 1u + 8u * 2u);
  EXPECT_EQ(run_cli("analyze --k 0 --out " + q(dir / "o2")), 2);
}

TEST(CliAugment, StegoCountOnFullSizeBatch) {
  testutil::TempDir dir;
  write_file(dir / "data_batch.bin", encode_cifar10(testutil::random_batch(10000, 52)));
  ASSERT_EQ(run_cli("augment " + q(dir / "data_batch.bin") + " --p 0.5 --seed 42 --out " + q(dir / "o.saug") +
                    " --records " + q(dir / "r.csv")),
            0);
  const auto lines = lines_of(dir / "r.csv");
  ASSERT_EQ(lines.size(), 10001u);
  std::size_t steg = 0;
  for (const auto& line : lines) steg += line.find(",steg,") != std::string::npos;
  EXPECT_GE(steg, 4700u);
  EXPECT_LE(steg, 5300u);
  EXPECT_EQ(read_container(dir / "o.saug").size(), 10000u);
}

TEST(CliBench, ReportsAndValidates) {
  testutil::TempDir dir;
  write_container(testutil::random_batch(32, 51), dir / "in.saug");
  const std::string report = testutil::capture_cli("bench " + q(dir / "in.saug") + " --repetitions 1 --threads 3");
  EXPECT_NE(report.find("threads=1 "), std::string::npos);
  EXPECT_NE(report.find("threads=3 "), std::string::npos);
  EXPECT_NE(report.find("samples_per_second="), std::string::npos);
  EXPECT_NE(report.find("bytes_per_second="), std::string::npos);
  EXPECT_EQ(run_cli("bench " + q(dir / "in.saug") + " --repetitions 2 --threads 2"), 0);
  EXPECT_EQ(run_cli("bench " + q(dir / "in.saug") + " --repetitions 0"), 2);
  EXPECT_EQ(run_cli("bench " + q(dir / "missing.saug")), 1);
}
