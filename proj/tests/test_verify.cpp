#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "orlicz/errors.hpp"
#include "orlicz/verify.hpp"

using namespace orlicz;

namespace {
VerifySuite small_suite() {
  VerifySuite s = default_suite();
  s.n_samples = 20;
  s.grids = {make_grid(1, {{0.0, 1.0}}, {41}), make_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, {11, 11})};
  return s;
}
}  // namespace

TEST(Verify, DefaultFamiliesPassAtReducedSize) {
  const auto rep = run_property_suite(small_suite());
  for (const auto& p : rep.properties) {
    EXPECT_TRUE(p.passed()) << p.name << " worst " << p.worst_margin << " " << p.error;
    EXPECT_GT(p.samples, 0u);
  }
  EXPECT_TRUE(rep.overall);
  EXPECT_EQ(rep.properties.size(), property_names().size());
}

TEST(Verify, ReportsAreDeterministic) {
  auto s = small_suite();
  s.only = {"young", "triangle", "derivative"};
  const auto a = run_property_suite(s).to_json();
  const auto b = run_property_suite(s).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  s.seed = 2;
  EXPECT_NE(run_property_suite(s).to_json().dump(), a.dump());
}

TEST(Verify, WitnessReplaysWorstMargin) {
  auto s = small_suite();
  s.only = {"young", "norm_modular", "holder", "derivative", "delta2", "fundamental_theorem"};
  const auto rep = run_property_suite(s);
  for (const auto& p : rep.properties) {
    EXPECT_EQ(evaluate_case(s, p.name, p.witness), p.worst_margin) << p.name;
  }
}

TEST(Verify, SampleCountsScaleExceptFixedOnes) {
  auto s = small_suite();
  s.families.erase(s.families.begin() + 1, s.families.end());
  s.grids.erase(s.grids.begin() + 1, s.grids.end());
  s.reactions.erase(s.reactions.begin() + 1, s.reactions.end());
  s.only = {"phi_odd", "delta2", "derivative"};
  const auto rep = run_property_suite(s);
  EXPECT_EQ(rep.property("phi_odd").samples, 20u);
  EXPECT_EQ(rep.property("delta2").samples, 10000u);
  EXPECT_EQ(rep.property("derivative").samples, 50u);
  s.sample_overrides["phi_odd"] = 7;
  EXPECT_EQ(run_property_suite(s).property("phi_odd").samples, 7u);
}

TEST(Verify, BrokenFamilyIsCaught) {
  auto s = small_suite();
  s.families = {MusielakFamily::notch(ExponentField::constant(2.0), 0.9)};
  s.n_samples = 200;
  s.only = {"phi_monotone", "phi_odd"};
  const auto rep = run_property_suite(s);
  EXPECT_FALSE(rep.overall);
  EXPECT_FALSE(rep.property("phi_monotone").passed());
  EXPECT_TRUE(rep.property("phi_odd").passed());
  EXPECT_LT(rep.property("phi_monotone").worst_margin, 0.0);
}

TEST(Verify, CsvAndJsonShape) {
  auto s = small_suite();
  s.only = {"phi_odd"};
  const auto rep = run_property_suite(s);
  EXPECT_EQ(rep.to_csv().substr(0, rep.to_csv().find('\n')), "property,samples,passes,worst_margin");
  const auto j = rep.to_json();
  EXPECT_TRUE(j.contains("overall"));
  ASSERT_TRUE(j.contains("properties"));
  EXPECT_EQ(j["properties"].size(), 1u);
}

TEST(Verify, InvalidConfigurationThrows) {
  auto s = small_suite();
  s.n_samples = 0;
  EXPECT_THROW(run_property_suite(s), InputError);
  s = small_suite();
  s.only = {"no_such_property"};
  EXPECT_THROW(run_property_suite(s), InputError);
  s = small_suite();
  s.families.clear();
  EXPECT_THROW(run_property_suite(s), InputError);
}

TEST(Verify, LoadsSuiteFile) {
  const std::string dir = ::testing::TempDir();
  {
    std::ofstream(dir + "vfam.cfg") << "family = power\nexponent = affine 2 1 0 1\n";
    std::ofstream(dir + "vsuite.cfg") << "families = vfam.cfg\nreactions = none\ngrids = 1 0 1 21; 2 0 1 0 1 7 7\n"
                                         "samples = 5\nseed = 9\nonly = phi_odd unit_ball\n";
  }
  const auto s = load_suite(dir + "vsuite.cfg");
  EXPECT_EQ(s.families.size(), 1u);
  EXPECT_TRUE(s.reactions.empty());
  EXPECT_EQ(s.grids.size(), 2u);
  EXPECT_EQ(s.n_samples, 5u);
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.only.size(), 2u);
  EXPECT_EQ(load_suite(dir + "vsuite.cfg", 3, 4).n_samples, 3u);
  EXPECT_TRUE(run_property_suite(s).overall);
  std::remove((dir + "vfam.cfg").c_str());
  std::remove((dir + "vsuite.cfg").c_str());
  EXPECT_THROW(load_suite(dir + "missing_suite.cfg"), InputError);
}
