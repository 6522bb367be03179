#pragma once

// Annual mass balance from planted area to biochar and carbon credits.

#include <algorithm>

#include "biochar/params.hpp"

namespace biochar {

struct MassBalance {
  double cane_t = 0.0;               // t/y
  double bagasse_wet_t = 0.0;        // t/y
  double bagasse_available_t = 0.0;  // t/y, pyrolysis feed (plant capacity)
  double bagasse_dry_t = 0.0;        // t/y
  double biochar_t = 0.0;            // t/y
  double treated_ha = 0.0;           // ha/y receiving biochar
  double applied_t = 0.0;            // t/y spread on the farm
  double surplus_t = 0.0;            // t/y left for sale
  double credits_tco2e = 0.0;        // tCO2e/y

  bool operator==(const MassBalance&) const = default;
};

/// Hectares treated when `biochar_t` is spread at the configured rate, capped
/// by the farm area.
inline double treated_area(const ParameterSet& p, const ScenarioSpec& s, double biochar_t) {
  if (s.kind == ScenarioKind::DirectSale) return 0.0;
  return std::min(s.farm_size_ha, biochar_t / p.land_app_rate);
}

inline double credit_volume(const MassBalance& mb, const ParameterSet& p,
                            const ScenarioSpec& /*s*/) {
  // Both scenario kinds are credited for the full tonnage produced.
  return mb.biochar_t * p.credit_factor;
}

inline MassBalance mass_balance(const ParameterSet& p, const ScenarioSpec& s) {
  validate(s);
  MassBalance mb;
  mb.cane_t = s.farm_size_ha * p.sugarcane_yield;
  mb.bagasse_wet_t = mb.cane_t * p.bagasse_fraction;
  mb.bagasse_available_t = mb.bagasse_wet_t * p.bagasse_availability;
  mb.bagasse_dry_t = mb.bagasse_available_t * p.dry_fraction;
  mb.biochar_t = mb.bagasse_dry_t * p.biochar_fraction;

  mb.treated_ha = treated_area(p, s, mb.biochar_t);
  mb.applied_t = mb.treated_ha * p.land_app_rate;
  // The cap can leave applied_t a rounding step above biochar_t.
  mb.applied_t = std::min(mb.applied_t, mb.biochar_t);
  mb.surplus_t = mb.biochar_t - mb.applied_t;
  mb.credits_tco2e = credit_volume(mb, p, s);
  return mb;
}

}  // namespace biochar
