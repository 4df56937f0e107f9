#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "srpuf/dataset_io.hpp"
#include "srpuf/error.hpp"

namespace srpuf {
namespace {

CrpDataset small_dataset(std::uint64_t seed = 5) {
  ExperimentConfig cfg;
  cfg.layout = ArrayLayout(32);
  cfg.n_dies = 6;
  cfg.n_reps = 2;
  cfg.seed = seed;
  cfg.noise_std = 0.7;
  return run_experiment(cfg);
}

std::string serialize(const CrpDataset& ds) {
  std::ostringstream out;
  write_dataset(out, ds);
  return out.str();
}

CrpDataset parse(const std::string& text) {
  std::istringstream in(text);
  return read_dataset(in);
}

TEST(BitVectorHex, PositionZeroIsMostSignificantBit) {
  EXPECT_EQ(BitVector::from_string("1000").to_hex(), "8");
  EXPECT_EQ(BitVector::from_string("00000001").to_hex(), "01");
  EXPECT_EQ(BitVector::from_string("101").to_hex(), "a");
  EXPECT_EQ(BitVector::from_hex("a", 3), BitVector::from_string("101"));
  EXPECT_THROW(BitVector::from_hex("b", 3), std::invalid_argument);  // pad bit set
  EXPECT_THROW(BitVector::from_hex("0g", 8), std::invalid_argument);
  EXPECT_THROW(BitVector::from_hex("00", 12), std::invalid_argument);
}

TEST(BitVectorHex, RandomRoundTrip) {
  Stream rng(2);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.below(200);
    BitVector v(n);
    for (std::size_t k = 0; k < n; ++k) v.set(k, rng.below(2) == 1);
    ASSERT_EQ(BitVector::from_hex(v.to_hex(), n), v);
  }
}

TEST(DatasetIo, RoundTripIsExact) {
  for (std::uint64_t seed : {1ULL, 2ULL, 18446744073709551615ULL}) {
    const CrpDataset ds = small_dataset(seed);
    const CrpDataset back = parse(serialize(ds));
    EXPECT_EQ(back, ds);
    EXPECT_EQ(serialize(back), serialize(ds));
  }
}

TEST(DatasetIo, HeaderCarriesConfigAndSeed) {
  const std::string text = serialize(small_dataset(77));
  const auto header = nlohmann::json::parse(text.substr(0, text.find('\n')));
  EXPECT_EQ(header["record"], "header");
  EXPECT_EQ(header["format"], kDatasetFormat);
  EXPECT_EQ(header["config"]["seed"], 77);
  EXPECT_EQ(header["config"]["n_bits"], 32);
  EXPECT_EQ(header["sys_offsets"].size(), 32U);
}

TEST(DatasetIo, OneRecordPerResponse) {
  const CrpDataset ds = small_dataset();
  const std::string text = serialize(ds);
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  EXPECT_EQ(lines, 1 + ds.n_dies() + ds.n_stress_responses());
}

TEST(DatasetIo, CorruptInputsAreRejected) {
  const std::string good = serialize(small_dataset());
  const std::size_t first_nl = good.find('\n');
  const std::string header = good.substr(0, first_nl + 1);

  EXPECT_THROW(parse(""), DatasetError);
  EXPECT_THROW(parse("not json\n"), DatasetError);
  EXPECT_THROW(parse(good.substr(first_nl + 1)), DatasetError);  // no header
  EXPECT_THROW(parse(header), DatasetError);                      // missing responses
  EXPECT_THROW(parse(good + good.substr(first_nl + 1)), DatasetError);  // duplicates

  std::string truncated = good.substr(0, good.size() - 10);
  EXPECT_THROW(parse(truncated), DatasetError);

  std::string bad_bits = good;
  const std::size_t pos = bad_bits.find("\"bits\":\"") + 8;
  bad_bits[pos] = 'x';
  EXPECT_THROW(parse(bad_bits), DatasetError);

  std::string unknown = header + R"({"record":"mystery","die":0,"bits":"00000000"})" + "\n";
  EXPECT_THROW(parse(unknown), DatasetError);

  std::string bad_config = good;
  bad_config.replace(bad_config.find("\"n_bits\":32"), 11, "\"n_bits\":33");
  EXPECT_THROW(parse(bad_config), DatasetError);
}

TEST(DatasetIo, FileErrors) {
  EXPECT_THROW(load_dataset("/nonexistent/dir/data.ndjson"), IoError);
  EXPECT_THROW(save_dataset("/nonexistent/dir/data.ndjson", small_dataset()), IoError);
}

TEST(ConfigJson, RoundTripAndStrictness) {
  ExperimentConfig cfg;
  cfg.node = ProcessNode::preset(NodeName::N45);
  cfg.node.alpha = 1.25;
  cfg.layout = ArrayLayout(64);
  cfg.env_points = {EnvPoint::at(-10), {42.5, "hot"}};
  cfg.seed = 123456789012345ULL;
  EXPECT_EQ(config_from_json(config_to_json(cfg)), cfg);

  auto j = config_to_json(cfg);
  j["extra"] = 1;
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = config_to_json(cfg);
  j["variation"].erase("mu_off");
  EXPECT_THROW(config_from_json(j), ConfigError);
}

TEST(Reports, JsonAndCsvContents) {
  const CrpDataset ds = small_dataset();
  const MetricsReport report = evaluate(ds, ComparisonPolicy::all_pairs());
  const auto j = report_to_json(report, ds.config);
  EXPECT_EQ(j["n_comparisons"], 15);
  EXPECT_EQ(j["seed"], ds.config.seed);
  EXPECT_EQ(j["config"], config_to_json(ds.config));
  EXPECT_EQ(j["p_zero_per_position"].size(), 32U);
  EXPECT_EQ(j["intra_hd_histogram"].size(), ds.config.env_points.size());
  EXPECT_TRUE(j["collision"].contains("match_average"));
  EXPECT_TRUE(j["collision"].contains("mismatch_average"));

  const std::string inter = inter_hd_csv(report, ds.config);
  EXPECT_NE(inter.find("# seed=5\n"), std::string::npos);
  EXPECT_NE(inter.find("hd,count\n0,"), std::string::npos);
  EXPECT_NE(inter.find("\n32,"), std::string::npos);

  const std::string positions = positions_csv(report, ds.config);
  EXPECT_NE(positions.find("position,p_zero,bit_aliasing,collision_match,collision_mismatch\n0,"),
            std::string::npos);
  EXPECT_NE(intra_hd_csv(report, ds.config).find("env,temperature,hd,count\n0C,0,0,"),
            std::string::npos);
}

}  // namespace
}  // namespace srpuf
