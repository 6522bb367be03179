#pragma once

// Life-cycle cash-flow ledger: year-0 capital stack plus escalated yearly
// cost, revenue and savings lines.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "biochar/params.hpp"
#include "biochar/production.hpp"

namespace biochar {

struct CapitalStack {
  double c_es = 0.0;  // equipment & setup
  double c_iw = 0.0;  // indirect & working capital
  double c_pd = 0.0;  // planning & design
  double c_pv = 0.0;  // permits & credit-project validation
  double c_i = 0.0;   // total initial investment

  bool operator==(const CapitalStack&) const = default;
};

struct YearCosts {
  double maintenance = 0.0;
  double operation = 0.0;
  double labor = 0.0;
  double credit_cert = 0.0;
  double land_app = 0.0;

  double total() const { return maintenance + operation + labor + credit_cert + land_app; }
  bool operator==(const YearCosts&) const = default;
};

struct YearRevenues {
  double biochar_sale = 0.0;
  double credits = 0.0;
  double sugarcane_uplift = 0.0;

  double total() const { return biochar_sale + credits + sugarcane_uplift; }
  bool operator==(const YearRevenues&) const = default;
};

struct YearSavings {
  double fertilizer = 0.0;
  double operational = 0.0;

  double total() const { return fertilizer + operational; }
  bool operator==(const YearSavings&) const = default;
};

struct YearLine {
  int year = 1;
  YearCosts costs;
  YearRevenues revenues;
  YearSavings savings;
  double net = 0.0;             // revenues + savings - costs
  double cumulative_net = 0.0;  // -c_i + sum of nets through this year

  bool operator==(const YearLine&) const = default;
};

struct LedgerTotals {
  double c_total = 0.0;  // c_i + all yearly costs
  double r_total = 0.0;
  double s_total = 0.0;
  double b_total = 0.0;  // r_total + s_total
  YearCosts costs;       // per-component sums over the horizon
  YearRevenues revenues;
  YearSavings savings;

  bool operator==(const LedgerTotals&) const = default;
};

struct Ledger {
  ScenarioSpec scenario;
  MassBalance mass;
  CapitalStack capital;
  std::vector<YearLine> years;
  LedgerTotals totals;

  /// Year-0 flow -c_i followed by each year's net.
  std::vector<double> cash_flows() const {
    std::vector<double> flows;
    flows.reserve(years.size() + 1);
    flows.push_back(-capital.c_i);
    for (const auto& y : years) flows.push_back(y.net);
    return flows;
  }

  bool operator==(const Ledger&) const = default;
};

inline CapitalStack capital_stack(const ParameterSet& p, const MassBalance& mb) {
  CapitalStack c;
  if (mb.bagasse_available_t > 0.0) {
    const AdjustedCosts ref = adjusted_reference_costs(p, mb.bagasse_available_t);
    c.c_es = ref.installed;
    c.c_iw = ref.indirect;
  }
  // Overhead percentages apply to the pre-overhead base.
  const double base = c.c_es + c.c_iw;
  c.c_pd = p.planning_pct * base;
  c.c_pv = p.permit_pct * base + p.credit_review_fee;
  c.c_i = c.c_es + c.c_iw + c.c_pd + c.c_pv;
  return c;
}

inline CapitalStack capital_stack(const ParameterSet& p, const ScenarioSpec& s) {
  return capital_stack(p, mass_balance(p, s));
}

/// Escalation multipliers for one year.
struct Escalation {
  double costs = 1.0;    // inflation; also savings, uplift and biochar sales
  double credits = 1.0;  // credit price path
  double other_revenue = 1.0;
};

inline Escalation escalation(const ParameterSet& p, int year) {
  const double t = static_cast<double>(year - 1);
  Escalation e;
  e.costs = std::pow(1.0 + p.inflation_rate, t);
  if (p.escalate_revenues) {
    e.credits = std::pow(1.0 + p.credit_price_escalation, t);
    e.other_revenue = e.costs;
  }
  return e;
}

/// Line items for `year` (1-based). `net` is filled in; `cumulative_net` is
/// left at zero because it depends on the preceding years.
inline YearLine year_line(const ParameterSet& p, const ScenarioSpec& s, const MassBalance& mb,
                          int year) {
  if (year < 1 || year > p.horizon_years) {
    throw std::out_of_range("year must lie in [1, horizon_years]");
  }
  const bool land = s.kind == ScenarioKind::LandApplication;
  const bool benefits_active = land && year > p.land_benefit_lag_years;

  double c_es = 0.0;
  AdjustedCosts ref;
  if (mb.bagasse_available_t > 0.0) {
    ref = adjusted_reference_costs(p, mb.bagasse_available_t);
    c_es = ref.installed;
  }
  const Escalation e = escalation(p, year);

  YearLine y;
  y.year = year;
  y.costs.maintenance = p.maintenance_pct * c_es * e.costs;
  y.costs.operation = ref.operation_per_y * e.costs;
  y.costs.labor = ref.labor_per_y * e.costs;
  y.costs.credit_cert =
      (mb.credits_tco2e * p.credit_issuance_fee + p.credit_review_fee) * e.costs;
  y.costs.land_app = land ? mb.treated_ha * p.land_app_cost * e.costs : 0.0;

  y.revenues.credits = mb.credits_tco2e * p.credit_price * e.credits;
  y.revenues.biochar_sale = mb.surplus_t * p.biochar_price * e.other_revenue;
  if (benefits_active) {
    y.revenues.sugarcane_uplift = mb.treated_ha * p.sugarcane_yield * p.yield_uplift *
                                  p.sugarcane_price * e.other_revenue;
    y.savings.fertilizer =
        mb.treated_ha * p.fertilizer_cost * p.fertilizer_savings_fraction * e.costs;
    y.savings.operational =
        mb.treated_ha * p.crop_mgmt_cost * p.crop_mgmt_savings_fraction * e.costs;
  }
  y.net = y.revenues.total() + y.savings.total() - y.costs.total();
  return y;
}

inline void accumulate(YearCosts& into, const YearCosts& c) {
  into.maintenance += c.maintenance;
  into.operation += c.operation;
  into.labor += c.labor;
  into.credit_cert += c.credit_cert;
  into.land_app += c.land_app;
}

inline void accumulate(YearRevenues& into, const YearRevenues& r) {
  into.biochar_sale += r.biochar_sale;
  into.credits += r.credits;
  into.sugarcane_uplift += r.sugarcane_uplift;
}

inline void accumulate(YearSavings& into, const YearSavings& s) {
  into.fertilizer += s.fertilizer;
  into.operational += s.operational;
}

inline Ledger build_ledger(const ParameterSet& p, const ScenarioSpec& s) {
  validate(p);
  Ledger l;
  l.scenario = s;
  l.mass = mass_balance(p, s);
  l.capital = capital_stack(p, l.mass);
  l.years.reserve(static_cast<std::size_t>(p.horizon_years));

  double cumulative = -l.capital.c_i;
  double yearly_costs = 0.0;
  for (int year = 1; year <= p.horizon_years; ++year) {
    YearLine y = year_line(p, s, l.mass, year);
    cumulative += y.net;
    y.cumulative_net = cumulative;

    yearly_costs += y.costs.total();
    l.totals.r_total += y.revenues.total();
    l.totals.s_total += y.savings.total();
    accumulate(l.totals.costs, y.costs);
    accumulate(l.totals.revenues, y.revenues);
    accumulate(l.totals.savings, y.savings);
    l.years.push_back(y);
  }
  l.totals.c_total = l.capital.c_i + yearly_costs;
  l.totals.b_total = l.totals.r_total + l.totals.s_total;
  return l;
}

}  // namespace biochar
