#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "carforge/errors.hpp"
#include "carforge/mining.hpp"
#include "carforge/rule_io.hpp"
#include "oracles/oracles.hpp"

using namespace carforge;

TEST(RuleIo, FormatSampleRule) {
  auto d = oracle::load_weather();
  auto r = oracle::make_rule(d, {{"Outlook", "sunny"}, {"Humidity", "high"}}, "no");
  EXPECT_EQ(format_rule(r, d.schema()), "Outlook=sunny & Humidity=high => Play=no ; 3 3 5 14");
}

TEST(RuleIo, FixtureParsesLikeOracle) {
  auto d = oracle::load_weather();
  std::ifstream in(oracle::data_path("weather_sample_rules.txt"));
  auto rules = read_rules(in, d.schema());
  EXPECT_EQ(rules, oracle::load_weather_sample_rules(d.schema()));
}

TEST(RuleIo, RoundTripMinedRules) {
  auto d = oracle::load_weather();
  MiningConfig cfg;
  auto mined = mine_cars(d, cfg);
  std::stringstream buf;
  write_rules(buf, mined, d.schema());
  EXPECT_EQ(read_rules(buf, d.schema()), mined);
}

TEST(RuleIo, ItemOrderNormalised) {
  auto d = oracle::load_weather();
  auto a = parse_rule("Humidity=high & Outlook=sunny => Play=no ; 3 3 5 14", d.schema());
  auto b = parse_rule("Outlook=sunny & Humidity=high => Play=no ; 3 3 5 14", d.schema());
  EXPECT_EQ(a, b);
}

TEST(RuleIo, Errors) {
  auto d = oracle::load_weather();
  const auto& s = d.schema();
  EXPECT_THROW(parse_rule("Outlook=foggy => Play=no ; 0 0 5 14", s), DataError);
  EXPECT_THROW(parse_rule("Colour=red => Play=no ; 0 0 5 14", s), DataError);
  EXPECT_THROW(parse_rule("Play=yes => Play=yes ; 9 9 9 14", s), DataError);
  EXPECT_THROW(parse_rule("Outlook=sunny & Outlook=rainy => Play=no ; 0 0 5 14", s), DataError);
  EXPECT_THROW(parse_rule("Outlook=sunny => Windy=TRUE ; 2 5 6 14", s), DataError);
  EXPECT_THROW(parse_rule("Outlook=sunny => Play=no ; 3 5", s), DataError);
  EXPECT_THROW(parse_rule("Outlook=sunny => Play=no ; 6 5 5 14", s), DataError);
  EXPECT_THROW(parse_rule("Outlook=sunny Play=no", s), DataError);

  std::istringstream in("# header\n\nOutlook=overcast => Play=yes ; 4 4 9 14\nbroken\n");
  try {
    read_rules(in, s);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}
