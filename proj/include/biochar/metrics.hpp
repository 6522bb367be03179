#pragma once

// Financial indicators over a ledger: NPV, IRR, ROI, break-even, and the
// benefit-cost difference.

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biochar/ledger.hpp"
#include "biochar/params.hpp"
#include "biochar/rootfind.hpp"

namespace biochar {

// ---------------------------------------------------------------------------
// Net present value

/// Sum of CF_t / (1 + rate)^t with t counted from 0, in index order.
inline double npv(std::span<const double> cash_flows, double rate) {
  if (!(rate > -1.0)) throw std::domain_error("discount rate must be > -1");
  const double base = 1.0 + rate;
  double sum = 0.0;
  for (std::size_t t = 0; t < cash_flows.size(); ++t) {
    sum += cash_flows[t] / std::pow(base, static_cast<double>(t));
  }
  return sum;
}

/// NPV with a per-year rate schedule; flow t is discounted by the product of
/// (1 + schedule[k]) for k < t. The schedule needs one entry per year after 0.
inline double npv(std::span<const double> cash_flows, std::span<const double> schedule) {
  if (!cash_flows.empty() && schedule.size() + 1 < cash_flows.size()) {
    throw std::invalid_argument("discount schedule shorter than the cash-flow horizon");
  }
  double factor = 1.0;
  double sum = 0.0;
  for (std::size_t t = 0; t < cash_flows.size(); ++t) {
    if (t > 0) {
      if (!(schedule[t - 1] > -1.0)) throw std::domain_error("discount rate must be > -1");
      factor *= 1.0 + schedule[t - 1];
    }
    sum += cash_flows[t] / factor;
  }
  return sum;
}

inline double npv(std::span<const double> cash_flows, const ParameterSet& p) {
  if (p.discount_rate_schedule.empty()) return npv(cash_flows, p.interest_rate);
  return npv(cash_flows, std::span<const double>(p.discount_rate_schedule));
}

// ---------------------------------------------------------------------------
// Internal rate of return

enum class IrrStatus { Defined, AllZero, NoSignChange, MultipleSignChanges };

inline std::string_view to_string(IrrStatus s) {
  switch (s) {
    case IrrStatus::Defined: return "defined";
    case IrrStatus::AllZero: return "all_zero_flows";
    case IrrStatus::NoSignChange: return "no_sign_change";
    case IrrStatus::MultipleSignChanges: return "multiple_sign_changes";
  }
  return "";
}

struct IrrResult {
  IrrStatus status = IrrStatus::AllZero;
  std::optional<double> rate;

  bool defined() const { return rate.has_value(); }
  bool operator==(const IrrResult&) const = default;
};

/// Number of sign changes in the sequence, ignoring zeros.
inline int sign_changes(std::span<const double> flows) {
  int changes = 0;
  int last = 0;
  for (double f : flows) {
    const int s = f > 0.0 ? 1 : (f < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// IRR of a cash-flow vector. Defined only when the flows change sign exactly
/// once, which guarantees a single root in (-1, inf).
inline IrrResult irr(std::span<const double> flows) {
  if (flows.empty()) throw std::invalid_argument("irr: empty cash-flow list");
  const int changes = sign_changes(flows);
  bool any_nonzero = false;
  for (double f : flows) any_nonzero = any_nonzero || f != 0.0;
  if (!any_nonzero) return {IrrStatus::AllZero, std::nullopt};
  if (changes == 0) return {IrrStatus::NoSignChange, std::nullopt};
  if (changes > 1) return {IrrStatus::MultipleSignChanges, std::nullopt};

  auto f = [&](double r) { return npv(flows, r); };

  // Large rates take the sign of the earliest nonzero flow, rates near -1 the
  // sign of the latest one.
  double first = 0.0;
  for (double v : flows) {
    if (v != 0.0) {
      first = v;
      break;
    }
  }
  const bool first_negative = std::signbit(first);

  double hi = 1.0;
  while (std::signbit(f(hi)) != first_negative && hi < 1e12) hi *= 2.0;
  double gap = 0.5;
  double lo = -1.0 + gap;
  while (std::signbit(f(lo)) == first_negative && f(lo) != 0.0 && gap > 1e-15) {
    gap *= 0.1;
    lo = -1.0 + gap;
  }

  const auto root = bisect(f, lo, hi);
  if (!root) return {IrrStatus::NoSignChange, std::nullopt};
  return {IrrStatus::Defined, *root};
}

// ---------------------------------------------------------------------------
// Return on investment

struct RoiMetrics {
  std::vector<double> per_year;  // %
  double total = 0.0;            // %
  double average = 0.0;          // % per year
};

/// ROI_t = (R_t + S_t - C_t) / c_i * 100, where C_t never includes c_i.
/// Savings enter only when `include_savings` is set.
inline RoiMetrics roi_metrics(const Ledger& ledger, bool include_savings = true) {
  if (!(ledger.capital.c_i > 0.0)) {
    throw std::domain_error("roi: initial investment must be positive");
  }
  RoiMetrics roi;
  roi.per_year.reserve(ledger.years.size());
  for (const auto& y : ledger.years) {
    const double gain = y.revenues.total() + (include_savings ? y.savings.total() : 0.0) -
                        y.costs.total();
    const double pct = gain / ledger.capital.c_i * 100.0;
    roi.per_year.push_back(pct);
    roi.total += pct;
  }
  if (!roi.per_year.empty()) roi.average = roi.total / static_cast<double>(roi.per_year.size());
  return roi;
}

// ---------------------------------------------------------------------------
// Break-even

/// First crossing of `revenue_cum` over `cost_cum`, linearly interpolated
/// between consecutive points. Element k belongs to year `first_year + k`.
/// Returns nullopt when revenue never catches up.
inline std::optional<double> interpolate_crossing(std::span<const double> cost_cum,
                                                  std::span<const double> revenue_cum,
                                                  int first_year = 0) {
  if (cost_cum.size() != revenue_cum.size()) {
    throw std::invalid_argument("break-even curves differ in length");
  }
  for (std::size_t k = 0; k < cost_cum.size(); ++k) {
    const double gap = revenue_cum[k] - cost_cum[k];
    if (gap < 0.0) continue;
    const double year = static_cast<double>(first_year) + static_cast<double>(k);
    if (k == 0) return year;
    const double prev = revenue_cum[k - 1] - cost_cum[k - 1];
    return year - 1.0 + (-prev) / (gap - prev);
  }
  return std::nullopt;
}

struct BreakEvenCurves {
  std::vector<double> cost_cum;     // index = year, year 0 holds c_i
  std::vector<double> revenue_cum;  // revenues + savings
};

inline BreakEvenCurves break_even_curves(const Ledger& ledger) {
  BreakEvenCurves c;
  c.cost_cum.push_back(ledger.capital.c_i);
  c.revenue_cum.push_back(0.0);
  for (const auto& y : ledger.years) {
    c.cost_cum.push_back(c.cost_cum.back() + y.costs.total());
    c.revenue_cum.push_back(c.revenue_cum.back() + y.revenues.total() + y.savings.total());
  }
  return c;
}

/// Fractional year at which cumulative revenues and savings first cover the
/// initial investment plus cumulative yearly costs. Undiscounted.
inline std::optional<double> break_even(const Ledger& ledger) {
  const BreakEvenCurves c = break_even_curves(ledger);
  return interpolate_crossing(c.cost_cum, c.revenue_cum, 0);
}

// ---------------------------------------------------------------------------
// Cost-benefit

struct BenefitCost {
  double b_total = 0.0;
  double c_total = 0.0;
  double bcd = 0.0;
};

inline BenefitCost benefit_cost(const Ledger& ledger) {
  const double b = ledger.totals.r_total + ledger.totals.s_total;
  return {b, ledger.totals.c_total, b - ledger.totals.c_total};
}

// ---------------------------------------------------------------------------
// Combined report

struct MetricsReport {
  std::string label;
  std::optional<double> break_even_years;
  std::vector<double> roi_per_year;  // %
  double roi_total = 0.0;            // %
  double roi_average = 0.0;          // %/y
  double b_total = 0.0;
  double c_total = 0.0;
  double bcd = 0.0;
  double npv = 0.0;
  IrrResult irr;
  double revenue_cost_ratio = 0.0;

  bool operator==(const MetricsReport&) const = default;
};

inline MetricsReport evaluate(const Ledger& ledger, const ParameterSet& p) {
  MetricsReport m;
  m.label = ledger.scenario.label;
  m.break_even_years = break_even(ledger);
  RoiMetrics roi = roi_metrics(ledger, p.roi_includes_savings);
  m.roi_per_year = std::move(roi.per_year);
  m.roi_total = roi.total;
  m.roi_average = roi.average;
  const BenefitCost bc = benefit_cost(ledger);
  m.b_total = bc.b_total;
  m.c_total = bc.c_total;
  m.bcd = bc.bcd;
  const std::vector<double> flows = ledger.cash_flows();
  m.npv = npv(flows, p);
  m.irr = irr(flows);
  m.revenue_cost_ratio = ledger.totals.c_total > 0.0 ? ledger.totals.r_total / ledger.totals.c_total
                                                     : 0.0;
  return m;
}

struct ScenarioResult {
  Ledger ledger;
  MetricsReport metrics;
};

inline ScenarioResult evaluate_scenario(const ParameterSet& p, const ScenarioSpec& s) {
  ScenarioResult r;
  r.ledger = build_ledger(p, s);
  r.metrics = evaluate(r.ledger, p);
  return r;
}

}  // namespace biochar
