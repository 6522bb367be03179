#include <gtest/gtest.h>

#include "biochar/production.hpp"

using namespace biochar;

TEST(MassBalance, SmallFarmChain) {
  const ParameterSet p;
  const auto mb = mass_balance(p, {10000.0, ScenarioKind::DirectSale, "a"});
  EXPECT_NEAR(mb.cane_t, 737000.0, 1e-6);
  EXPECT_NEAR(mb.bagasse_wet_t, 206360.0, 1e-6);
  EXPECT_NEAR(mb.bagasse_available_t, 144452.0, 1e-6);
  EXPECT_NEAR(mb.bagasse_dry_t, 86671.2, 1e-6);
  EXPECT_NEAR(mb.biochar_t, 43595.6136, 1e-6);
  EXPECT_EQ(mb.treated_ha, 0.0);
  EXPECT_EQ(mb.applied_t, 0.0);
  EXPECT_DOUBLE_EQ(mb.surplus_t, mb.biochar_t);
}

TEST(MassBalance, LandApplicationIsCappedByFarmArea) {
  const ParameterSet p;
  const auto mb = mass_balance(p, {10000.0, ScenarioKind::LandApplication, "b"});
  EXPECT_DOUBLE_EQ(mb.treated_ha, 10000.0);
  EXPECT_NEAR(mb.applied_t, 42000.0, 1e-9);
  EXPECT_NEAR(mb.surplus_t, 1595.6136, 1e-6);
}

TEST(MassBalance, LandApplicationLimitedByBiochar) {
  ParameterSet p;
  p.land_app_rate = 10.0;
  const auto mb = mass_balance(p, {10000.0, ScenarioKind::LandApplication, "b"});
  EXPECT_NEAR(mb.treated_ha, 4359.56136, 1e-6);
  EXPECT_DOUBLE_EQ(mb.applied_t, mb.biochar_t);
  EXPECT_EQ(mb.surplus_t, 0.0);
}

TEST(MassBalance, CreditsFollowCreditFactor) {
  ParameterSet p;
  p.credit_factor = 1.2;
  for (auto kind : {ScenarioKind::DirectSale, ScenarioKind::LandApplication}) {
    const auto mb = mass_balance(p, {10000.0, kind, "c"});
    EXPECT_NEAR(mb.credits_tco2e, 52314.73632, 1e-6);
  }
}

TEST(MassBalance, LinearInFarmSize) {
  const ParameterSet p;
  const auto one = mass_balance(p, {12345.0, ScenarioKind::DirectSale, ""});
  const auto three = mass_balance(p, {3 * 12345.0, ScenarioKind::DirectSale, ""});
  EXPECT_NEAR(three.biochar_t, 3.0 * one.biochar_t, 1e-9 * three.biochar_t);
  EXPECT_NEAR(three.credits_tco2e, 3.0 * one.credits_tco2e, 1e-9 * three.credits_tco2e);
}

TEST(MassBalance, RejectsNonPositiveFarm) {
  EXPECT_THROW(mass_balance(ParameterSet{}, {0.0, ScenarioKind::DirectSale, ""}), ParameterError);
  EXPECT_THROW(mass_balance(ParameterSet{}, {-5.0, ScenarioKind::DirectSale, ""}), ParameterError);
}
