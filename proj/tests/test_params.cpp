#include <cmath>

#include <gtest/gtest.h>

#include "biochar/params.hpp"

using namespace biochar;

TEST(Params, DefaultsAreValid) { EXPECT_NO_THROW(validate(ParameterSet{})); }

TEST(Params, EmptyDocumentKeepsBase) {
  ParameterSet base;
  base.credit_price = 123.0;
  EXPECT_EQ(load_parameters("", base), base);
  EXPECT_EQ(load_parameters("  \n", base), base);
  EXPECT_EQ(load_parameters("{}", base), base);
}

TEST(Params, OverlaysKnownKeys) {
  const auto p = load_parameters(R"({"credit_price": 150, "horizon_years": 25,
                                     "escalate_revenues": false})");
  EXPECT_DOUBLE_EQ(p.credit_price, 150.0);
  EXPECT_EQ(p.horizon_years, 25);
  EXPECT_FALSE(p.escalate_revenues);
  EXPECT_DOUBLE_EQ(p.interest_rate, ParameterSet{}.interest_rate);
}

namespace {
std::string offending_key(std::string_view doc) {
  try {
    load_parameters(doc);
  } catch (const ParameterError& e) {
    return e.key();
  }
  return "<none>";
}
}  // namespace

TEST(Params, ErrorsNameTheKey) {
  EXPECT_EQ(offending_key(R"({"no_such_thing": 1})"), "no_such_thing");
  EXPECT_EQ(offending_key(R"({"interest_rate": -0.1})"), "interest_rate");
  EXPECT_EQ(offending_key(R"({"bagasse_availability": 1.2})"), "bagasse_availability");
  EXPECT_EQ(offending_key(R"({"credit_price": "high"})"), "credit_price");
  EXPECT_EQ(offending_key(R"({"horizon_years": 2.5})"), "horizon_years");
  EXPECT_EQ(offending_key(R"({"horizon_years": 0})"), "horizon_years");
  EXPECT_EQ(offending_key(R"({"escalate_revenues": 1})"), "escalate_revenues");
  EXPECT_EQ(offending_key("[1, 2]"), "<document>");
  EXPECT_EQ(offending_key("{oops"), "<document>");
}

TEST(Params, RejectsMassGainThroughPyrolysis) {
  ParameterSet p;
  p.dry_fraction = 1.0;
  p.biochar_fraction = 1.0;
  EXPECT_THROW(validate(p), ParameterError);
}

TEST(Params, DiscountScheduleMustCoverHorizon) {
  ParameterSet p;
  p.discount_rate_schedule.assign(19, 0.05);
  EXPECT_THROW(validate(p), ParameterError);
  p.discount_rate_schedule.assign(20, 0.05);
  EXPECT_NO_THROW(validate(p));
  p.discount_rate_schedule[3] = -1.0;
  EXPECT_THROW(validate(p), ParameterError);
}

TEST(Params, SerializeRoundTrips) {
  ParameterSet p;
  p.credit_factor = 0.6098335014123;
  p.location_cost_ratio = 1.0 / 3.0;
  p.land_benefit_lag_years = 0;
  p.roi_includes_savings = false;
  p.discount_rate_schedule.assign(20, 0.07);
  p.discount_rate_schedule[0] = 0.1 / 3.0;
  EXPECT_EQ(load_parameters(serialize(p)), p);
}

TEST(Params, OverrideChecksFieldKind) {
  const ParameterSet p;
  EXPECT_DOUBLE_EQ(with_override(p, "credit_price", 90.0).credit_price, 90.0);
  EXPECT_EQ(with_override(p, "horizon_years", 30.0).horizon_years, 30);
  EXPECT_THROW(with_override(p, "horizon_years", 30.5), ParameterError);
  EXPECT_THROW(with_override(p, "missing", 1.0), ParameterError);
  EXPECT_DOUBLE_EQ(get_numeric(p, "credit_price"), 179.0);
}

TEST(Params, ScenarioList) {
  const auto s = load_scenarios(R"({"scenarios": [
      {"label": "x", "farm_size_ha": 1500, "kind": "land_application"},
      {"label": "y", "farm_size_ha": 10, "kind": "A"}]})");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].kind, ScenarioKind::LandApplication);
  EXPECT_DOUBLE_EQ(s[0].farm_size_ha, 1500.0);
  EXPECT_EQ(s[1].kind, ScenarioKind::DirectSale);
  EXPECT_TRUE(load_scenarios("{}").empty());
  EXPECT_THROW(load_scenarios(R"({"scenarios": [{"label": "x", "farm_size_ha": 0,
                                                 "kind": "A"}]})"),
               ParameterError);
  EXPECT_THROW(load_scenarios(R"({"scenarios": [{"label": "x", "farm_size_ha": 1,
                                                 "kind": "C"}]})"),
               ParameterError);
}

TEST(Params, ScaleAdjustment) {
  ParameterSet p;
  const auto twice = adjusted_reference_costs(p, 2.0 * p.ref_capacity);
  EXPECT_NEAR(twice.installed, 38.42e6 * std::exp(0.7 * std::log(2.0)), 1e-6);
  EXPECT_NEAR(twice.installed, 62.41e6, 0.01e6);
  p.location_cost_ratio = 0.5;
  p.wage_ratio = 0.25;
  const auto at_ref = adjusted_reference_costs(p, p.ref_capacity);
  EXPECT_DOUBLE_EQ(at_ref.installed, 19.21e6);
  EXPECT_DOUBLE_EQ(at_ref.indirect, 6.815e6);
  EXPECT_DOUBLE_EQ(at_ref.operation_per_y, 1.04e6);
  EXPECT_DOUBLE_EQ(at_ref.labor_per_y, 0.2925e6);
  EXPECT_THROW(adjusted_reference_costs(p, 0.0), ParameterError);
}

TEST(Params, CreditFactorFromCarbon) {
  EXPECT_NEAR(credit_factor_from_carbon(0.6, 1.0), 2.2, 1e-12);
  EXPECT_NEAR(credit_factor_from_carbon(0.6, 0.5), 1.1, 1e-12);
}
