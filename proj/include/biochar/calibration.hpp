#pragma once

// Solves the three ratios the reference data leave open (location cost,
// wage, credits per tonne) against small-farm direct-sale anchors.

#include <cmath>
#include <stdexcept>
#include <string>

#include "biochar/ledger.hpp"
#include "biochar/params.hpp"
#include "biochar/production.hpp"
#include "biochar/rootfind.hpp"

namespace biochar {

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CalibrationAnchors {
  double small_equipment = 0.0;      // $ equipment & setup, small farm
  double small_labor_total = 0.0;    // $ labor over the horizon, escalated
  double small_rev_cost_ratio = 0.0; // r_total / c_total, small farm direct sale
};

/// Anchors reported for the 10000 ha direct-sale farm.
inline CalibrationAnchors paper_anchors() { return {39.5e6, 7.0e6, 1.7}; }

inline ScenarioSpec calibration_scenario() {
  return ScenarioSpec{10000.0, ScenarioKind::DirectSale, "small-A"};
}

/// Values the model produces for each anchor quantity under `p`.
struct AnchorOutputs {
  double small_equipment = 0.0;
  double small_labor_total = 0.0;
  double small_rev_cost_ratio = 0.0;
};

inline AnchorOutputs anchor_outputs(const ParameterSet& p) {
  const Ledger l = build_ledger(p, calibration_scenario());
  return {l.capital.c_es, l.totals.costs.labor,
          l.totals.c_total > 0.0 ? l.totals.r_total / l.totals.c_total : 0.0};
}

struct CalibrationBracket {
  double lo = 1e-6;
  double hi = 1e3;
  double rel_tol = 1e-9;
};

inline ParameterSet calibrate(ParameterSet p, const CalibrationAnchors& anchors,
                              CalibrationBracket bracket = {}) {
  validate(p);
  if (!(anchors.small_equipment > 0.0) || !(anchors.small_labor_total > 0.0)) {
    throw CalibrationError("anchors must be positive");
  }
  if (!(anchors.small_rev_cost_ratio >= 0.0) || !std::isfinite(anchors.small_rev_cost_ratio)) {
    throw CalibrationError("revenue/cost anchor must be a finite non-negative number");
  }

  // Equipment and labor are linear in their ratios: solve them in closed form
  // against the model evaluated at ratio 1.
  ParameterSet unit = p;
  unit.location_cost_ratio = 1.0;
  unit.wage_ratio = 1.0;
  const AnchorOutputs at_unit = anchor_outputs(unit);
  if (!(at_unit.small_equipment > 0.0) || !(at_unit.small_labor_total > 0.0)) {
    throw CalibrationError("no root in bracket: reference costs vanish for the small farm");
  }
  p.location_cost_ratio = anchors.small_equipment / at_unit.small_equipment;
  p.wage_ratio = anchors.small_labor_total / at_unit.small_labor_total;

  auto residual = [&](double factor) {
    ParameterSet trial = p;
    trial.credit_factor = factor;
    return anchor_outputs(trial).small_rev_cost_ratio - anchors.small_rev_cost_ratio;
  };
  const auto root = bisect(residual, bracket.lo, bracket.hi, {.rel_tol = bracket.rel_tol});
  if (!root) {
    throw CalibrationError("no root in bracket [" + std::to_string(bracket.lo) + ", " +
                           std::to_string(bracket.hi) + "] for credit_factor");
  }
  p.credit_factor = *root;
  validate(p);
  return p;
}

}  // namespace biochar
