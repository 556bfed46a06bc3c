#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ilim/io.hpp"

using namespace ilim;

TEST(Io, FormatNumberRoundTrips) {
  for (double v : {0.0, 0.5, 0.1, 1.0 / 3.0, std::numbers::ln2, 1e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(format_number(v)), v) << format_number(v);
  }
  EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(Io, FoldingPatternJson) {
  const FoldingPattern fp = folding_pattern_prefix(1.8, 7);
  const auto j = to_json(fp);
  EXPECT_EQ(j[0], "inf");
  EXPECT_EQ(j[1], 0);
  EXPECT_EQ(folding_pattern_from_json(j), fp);
}

TEST(Io, ChainJson) {
  const IntervalChain ch = build_chain(1.8, 2, 0.5);
  const auto j = to_json(ch);
  EXPECT_EQ(j["p"], 2);
  EXPECT_EQ(j["mesh"].get<double>(), ch.mesh());
  const IntervalChain back = chain_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.breakpoints(), ch.breakpoints());
  EXPECT_EQ(back.slope(), ch.slope());
}

TEST(Io, TowerJson) {
  const RenormTower t = make_tower({1, 2}, {0.5, 0.8});
  const auto spec = entropy_spectrum(t, 1.3);
  const auto j = tower_json(t, spec, 1.3);
  EXPECT_EQ(j["spectrum"].size(), spec.size());
  EXPECT_EQ(j["h_max"], 1.3);
  const RenormTower back = tower_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.periods, t.periods);
  EXPECT_EQ(back.entropies, t.entropies);
}

TEST(Io, SeparationCsv) {
  const SeparationCurve c = fit_growth(0.0625, {1, 2, 4}, 100);
  const std::string csv = separation_csv({c});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "eps,n,count,log_count");
  EXPECT_NE(csv.find("0.0625,3,4,"), std::string::npos);
}
