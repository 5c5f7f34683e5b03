#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <limits>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/exponent.hpp"

using namespace orlicz;

TEST(ParseReal, AcceptsDecimalAndScientific) {
  EXPECT_DOUBLE_EQ(parse_real("2.5", "x"), 2.5);
  EXPECT_DOUBLE_EQ(parse_real("-1e-3", "x"), -1e-3);
  EXPECT_DOUBLE_EQ(parse_real(" 4 ", "x"), 4.0);
}

TEST(ParseReal, RejectsGarbageWithContext) {
  try {
    parse_real("2.5abc", "lambda");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("lambda"), std::string::npos);
  }
  EXPECT_THROW(parse_real("", "x"), InputError);
  EXPECT_THROW(parse_count("-3", "n"), InputError);
  EXPECT_EQ(parse_count("17", "n"), 17u);
}

TEST(FormatReal, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, 2.0 / 7.0 * 1e-300, 6.02214076e23, -0.7071067811865476}) {
    EXPECT_EQ(parse_real(format_real(v), "v"), v);
  }
  EXPECT_EQ(format_fixed(2.0, 12), "2.000000000000");
  EXPECT_EQ(format_real(1234.5678, 4), "1235");
}

TEST(KeyValueConfig, ParsesCommentsAndLookups) {
  const auto cfg = KeyValueConfig::parse("# header\nfamily = power\nexponent = affine 2 1 0 1  # trailing\n\nlambda=0.5\n");
  EXPECT_EQ(cfg.get("family"), "power");
  EXPECT_EQ(cfg.get("exponent"), "affine 2 1 0 1");
  EXPECT_DOUBLE_EQ(cfg.number("lambda"), 0.5);
  EXPECT_DOUBLE_EQ(cfg.number_or("missing", 3.0), 3.0);
  EXPECT_EQ(cfg.words("exponent").size(), 5u);
  EXPECT_FALSE(cfg.has("missing"));
  EXPECT_THROW(static_cast<void>(cfg.get("missing")), InputError);
}

TEST(KeyValueConfig, RejectsMalformedLinesAndDuplicates) {
  EXPECT_THROW(KeyValueConfig::parse("just words\n"), InputError);
  EXPECT_THROW(KeyValueConfig::parse("a = 1\na = 2\n"), InputError);
  EXPECT_THROW(KeyValueConfig::parse(" = 2\n"), InputError);
}

TEST(KeyValueConfig, TextRoundTrip) {
  KeyValueConfig cfg;
  cfg.set("b", "2");
  cfg.set("a", "x y");
  const auto back = KeyValueConfig::parse(cfg.to_text());
  EXPECT_EQ(back.entries(), cfg.entries());
}

TEST(KeyValueConfig, MissingFileNamesPath) {
  try {
    KeyValueConfig::load("/nonexistent/dir/family.cfg");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/family.cfg"), std::string::npos);
  }
}

TEST(ExponentField, EvaluatesEachKind) {
  const auto c = ExponentField::constant(3.0);
  EXPECT_DOUBLE_EQ(c({0.3, 0.0}), 3.0);
  EXPECT_DOUBLE_EQ(c({-100.0, 5.0}), 3.0);
  const auto a = ExponentField::affine(2.0, 1.0, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(a({0.25, 0.0}), 2.25);
  EXPECT_DOUBLE_EQ(a.p_minus(), 2.0);
  EXPECT_DOUBLE_EQ(a.p_plus(), 3.0);
  const auto t = ExponentField::tabulated({2.0, 4.0, 3.0}, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(t({0.25, 0.0}), 3.0);
  EXPECT_DOUBLE_EQ(t({0.75, 0.0}), 3.5);
  EXPECT_DOUBLE_EQ(t.p_plus(), 4.0);
}

TEST(ExponentField, RejectsPointsOutsideSupportAndBadValues) {
  const auto a = ExponentField::affine(2.0, 1.0, 0.0, 1.0);
  EXPECT_THROW(static_cast<void>(a({1.5, 0.0})), DomainError);
  EXPECT_THROW(static_cast<void>(a({std::numeric_limits<double>::quiet_NaN(), 0.0})), DomainError);
  EXPECT_THROW(ExponentField::constant(1.0), InputError);
  EXPECT_THROW(ExponentField::affine(2.0, -1.5, 0.0, 1.0), InputError);
}

TEST(ExponentField, TextRoundTrip) {
  for (const auto& e : {ExponentField::constant(2.5), ExponentField::affine(3.0, 1.0, 0.0, 1.0),
                        ExponentField::tabulated({2.0, 2.5, 3.0}, -1.0, 1.0)}) {
    EXPECT_EQ(ExponentField::from_text(e.to_text()), e);
  }
  EXPECT_EQ(ExponentField::from_text("4"), ExponentField::constant(4.0));
  EXPECT_THROW(ExponentField::from_text("affine 1 2"), InputError);
}
