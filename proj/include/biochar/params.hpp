#pragma once

// Model parameters: defaults, bounds, the JSON configuration document, and the
// location/scale adjustment of the reference plant costs.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace biochar {

/// Raised for any configuration problem. `key()` names the offending field.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Every input of the viability model. Units are noted per field; money is
/// USD, masses are metric tonnes, rates are fractions per year.
struct ParameterSet {
  // Feedstock chain
  double sugarcane_yield = 73.7;        // t cane / ha / y
  double bagasse_fraction = 0.28;       // t wet bagasse / t cane
  double biochar_fraction = 0.503;      // t biochar / t dry bagasse
  double dry_fraction = 0.60;           // t dry bagasse / t wet bagasse
  double bagasse_availability = 0.70;   // share not burned for bioelectricity
  double land_app_rate = 4.2;           // t biochar / ha
  double yield_uplift = 0.15;           // relative cane yield gain on treated land

  // Macro-economics
  double interest_rate = 0.09;
  double inflation_rate = 0.03;
  double credit_price_escalation = 0.09;  // annual growth of the credit price
  double brl_to_usd = 0.18;               // informational; prices are already USD

  // Prices and fees
  double sugarcane_price = 30.6;      // $ / t cane
  double credit_price = 179.0;        // $ / tCO2e
  double credit_issuance_fee = 0.30;  // $ / credit
  double credit_review_fee = 1900.0;  // $ per review (validation and yearly)
  double fertilizer_cost = 34.0;      // $ / ha / y
  double crop_mgmt_cost = 437.0;      // $ / ha / y
  double land_app_cost = 320.0;       // $ / ha applied
  double biochar_price = 0.0;         // $ / t biochar sold outright

  // Project structure
  int horizon_years = 20;
  int land_benefit_lag_years = 1;  // years before uplift and savings start
  double planning_pct = 0.05;      // of capital base
  double permit_pct = 0.02;        // of capital base
  double maintenance_pct = 0.02;   // of equipment & setup, per year

  // Reference plant and adjustment
  double scale_exponent = 0.7;
  double ref_capacity = 84000.0;        // t bagasse / y
  double ref_installed_cost = 38.42e6;  // $
  double ref_indirect_cost = 13.63e6;   // $
  double ref_labor_cost = 1.17e6;       // $ / y
  double ref_operation_cost = 2.08e6;   // $ / y
  double location_cost_ratio = 1.0;     // calibratable
  double wage_ratio = 1.0;              // calibratable
  double credit_factor = 1.0;           // tCO2e / t biochar, calibratable

  double fertilizer_savings_fraction = 1.0;
  double crop_mgmt_savings_fraction = 1.0;

  bool escalate_revenues = true;
  bool roi_includes_savings = true;

  // Optional per-year discount rates (length horizon_years). Empty means a
  // constant interest_rate.
  std::vector<double> discount_rate_schedule;

  bool operator==(const ParameterSet&) const = default;
};

enum class ScenarioKind { DirectSale, LandApplication };

struct ScenarioSpec {
  double farm_size_ha = 10000.0;
  ScenarioKind kind = ScenarioKind::DirectSale;
  std::string label;

  bool operator==(const ScenarioSpec&) const = default;
};

inline std::string_view to_string(ScenarioKind kind) {
  return kind == ScenarioKind::DirectSale ? "direct_sale" : "land_application";
}

inline ScenarioKind scenario_kind_from_string(std::string_view text) {
  if (text == "direct_sale" || text == "A") return ScenarioKind::DirectSale;
  if (text == "land_application" || text == "B") return ScenarioKind::LandApplication;
  throw ParameterError("kind", "expected direct_sale|land_application, got '" +
                                   std::string(text) + "'");
}

inline void validate(const ScenarioSpec& s) {
  if (!(s.farm_size_ha > 0.0) || !std::isfinite(s.farm_size_ha)) {
    throw ParameterError("farm_size_ha", "must be positive");
  }
}

// ---------------------------------------------------------------------------
// Field table

enum class Bound {
  Fraction,        // [0, 1]
  NonNegative,     // [0, inf)
  Positive,        // (0, inf)
  AtLeastOne,      // integer >= 1
  NonNegativeInt,  // integer >= 0
  Flag,
};

using FieldMember =
    std::variant<double ParameterSet::*, int ParameterSet::*, bool ParameterSet::*>;

struct FieldInfo {
  std::string_view name;
  std::string_view unit;
  Bound bound;
  FieldMember member;

  bool numeric() const { return bound != Bound::Flag; }
};

inline const auto& parameter_fields() {
  using P = ParameterSet;
  static const auto table = std::to_array<FieldInfo>({
      {"sugarcane_yield", "t/ha/y", Bound::NonNegative, &P::sugarcane_yield},
      {"bagasse_fraction", "t/t", Bound::Fraction, &P::bagasse_fraction},
      {"biochar_fraction", "t/t", Bound::Fraction, &P::biochar_fraction},
      {"dry_fraction", "t/t", Bound::Fraction, &P::dry_fraction},
      {"bagasse_availability", "fraction", Bound::Fraction, &P::bagasse_availability},
      {"land_app_rate", "t/ha", Bound::Positive, &P::land_app_rate},
      {"yield_uplift", "fraction", Bound::Fraction, &P::yield_uplift},
      {"interest_rate", "1/y", Bound::NonNegative, &P::interest_rate},
      {"inflation_rate", "1/y", Bound::NonNegative, &P::inflation_rate},
      {"credit_price_escalation", "1/y", Bound::NonNegative, &P::credit_price_escalation},
      {"brl_to_usd", "$/R$", Bound::NonNegative, &P::brl_to_usd},
      {"sugarcane_price", "$/t", Bound::NonNegative, &P::sugarcane_price},
      {"credit_price", "$/tCO2e", Bound::NonNegative, &P::credit_price},
      {"credit_issuance_fee", "$/credit", Bound::NonNegative, &P::credit_issuance_fee},
      {"credit_review_fee", "$", Bound::NonNegative, &P::credit_review_fee},
      {"fertilizer_cost", "$/ha/y", Bound::NonNegative, &P::fertilizer_cost},
      {"crop_mgmt_cost", "$/ha/y", Bound::NonNegative, &P::crop_mgmt_cost},
      {"land_app_cost", "$/ha", Bound::NonNegative, &P::land_app_cost},
      {"biochar_price", "$/t", Bound::NonNegative, &P::biochar_price},
      {"horizon_years", "y", Bound::AtLeastOne, &P::horizon_years},
      {"land_benefit_lag_years", "y", Bound::NonNegativeInt, &P::land_benefit_lag_years},
      {"planning_pct", "fraction", Bound::Fraction, &P::planning_pct},
      {"permit_pct", "fraction", Bound::Fraction, &P::permit_pct},
      {"maintenance_pct", "fraction/y", Bound::Fraction, &P::maintenance_pct},
      {"scale_exponent", "-", Bound::NonNegative, &P::scale_exponent},
      {"ref_capacity", "t/y", Bound::Positive, &P::ref_capacity},
      {"ref_installed_cost", "$", Bound::NonNegative, &P::ref_installed_cost},
      {"ref_indirect_cost", "$", Bound::NonNegative, &P::ref_indirect_cost},
      {"ref_labor_cost", "$/y", Bound::NonNegative, &P::ref_labor_cost},
      {"ref_operation_cost", "$/y", Bound::NonNegative, &P::ref_operation_cost},
      {"location_cost_ratio", "-", Bound::NonNegative, &P::location_cost_ratio},
      {"wage_ratio", "-", Bound::NonNegative, &P::wage_ratio},
      {"credit_factor", "tCO2e/t", Bound::NonNegative, &P::credit_factor},
      {"fertilizer_savings_fraction", "fraction", Bound::Fraction,
       &P::fertilizer_savings_fraction},
      {"crop_mgmt_savings_fraction", "fraction", Bound::Fraction,
       &P::crop_mgmt_savings_fraction},
      {"escalate_revenues", "bool", Bound::Flag, &P::escalate_revenues},
      {"roi_includes_savings", "bool", Bound::Flag, &P::roi_includes_savings},
  });
  return table;
}

inline const FieldInfo* find_field(std::string_view name) {
  for (const auto& f : parameter_fields()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

inline std::string_view bound_text(Bound b) {
  switch (b) {
    case Bound::Fraction: return "fraction out of [0,1]";
    case Bound::NonNegative: return "must be >= 0";
    case Bound::Positive: return "must be > 0";
    case Bound::AtLeastOne: return "must be an integer >= 1";
    case Bound::NonNegativeInt: return "must be an integer >= 0";
    case Bound::Flag: return "must be a boolean";
  }
  return "";
}

inline bool within(Bound b, double v) {
  if (!std::isfinite(v)) return false;
  switch (b) {
    case Bound::Fraction: return v >= 0.0 && v <= 1.0;
    case Bound::NonNegative: return v >= 0.0;
    case Bound::Positive: return v > 0.0;
    case Bound::AtLeastOne: return v >= 1.0;
    case Bound::NonNegativeInt: return v >= 0.0;
    case Bound::Flag: return true;
  }
  return false;
}

/// Reads a numeric field as double. Throws for unknown or boolean fields.
inline double get_numeric(const ParameterSet& p, std::string_view name) {
  const FieldInfo* f = find_field(name);
  if (f == nullptr) throw ParameterError(std::string(name), "unknown parameter");
  if (auto m = std::get_if<double ParameterSet::*>(&f->member)) return p.**m;
  if (auto m = std::get_if<int ParameterSet::*>(&f->member)) return p.**m;
  throw ParameterError(std::string(name), "not a numeric parameter");
}

/// Returns a copy of `p` with one numeric field replaced. Integer fields
/// reject non-integral values. Bounds are not checked here; see validate().
inline ParameterSet with_override(ParameterSet p, std::string_view name, double value) {
  const FieldInfo* f = find_field(name);
  if (f == nullptr) throw ParameterError(std::string(name), "unknown parameter");
  if (auto m = std::get_if<double ParameterSet::*>(&f->member)) {
    p.**m = value;
  } else if (auto m = std::get_if<int ParameterSet::*>(&f->member)) {
    if (!std::isfinite(value) || std::nearbyint(value) != value) {
      throw ParameterError(std::string(name), "must be an integer");
    }
    p.**m = static_cast<int>(value);
  } else {
    throw ParameterError(std::string(name), "not a numeric parameter");
  }
  return p;
}

inline void validate(const ParameterSet& p) {
  for (const auto& f : parameter_fields()) {
    if (!f.numeric()) continue;
    const double v = get_numeric(p, f.name);
    if (!within(f.bound, v)) {
      throw ParameterError(std::string(f.name), std::string(bound_text(f.bound)) +
                                                    " (got " + nlohmann::json(v).dump() + ")");
    }
  }
  if (!(p.dry_fraction * p.biochar_fraction < 1.0)) {
    throw ParameterError("biochar_fraction", "dry_fraction * biochar_fraction must be < 1");
  }
  if (!p.discount_rate_schedule.empty()) {
    if (p.discount_rate_schedule.size() != static_cast<std::size_t>(p.horizon_years)) {
      throw ParameterError("discount_rate_schedule", "length must equal horizon_years");
    }
    for (double r : p.discount_rate_schedule) {
      if (!std::isfinite(r) || r <= -1.0) {
        throw ParameterError("discount_rate_schedule", "every rate must be > -1");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Configuration document

namespace detail {

inline void assign_field(ParameterSet& p, const FieldInfo& f, const nlohmann::json& v) {
  const std::string key(f.name);
  if (auto m = std::get_if<bool ParameterSet::*>(&f.member)) {
    if (!v.is_boolean()) throw ParameterError(key, "must be a boolean");
    p.**m = v.get<bool>();
  } else if (auto m = std::get_if<int ParameterSet::*>(&f.member)) {
    if (!v.is_number_integer()) throw ParameterError(key, "must be an integer");
    p.**m = v.get<int>();
  } else if (auto m = std::get_if<double ParameterSet::*>(&f.member)) {
    if (!v.is_number()) throw ParameterError(key, "must be a number");
    p.**m = v.get<double>();
  }
}

inline nlohmann::json parse_document(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return nlohmann::json::object();
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("<document>", std::string("parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("<document>", "top level must be an object");
  return doc;
}

}  // namespace detail

/// Overlays the keys of a JSON configuration document on `base` and validates
/// the result. Accepted keys are the ParameterSet field names plus
/// "discount_rate_schedule" and "scenarios" (the latter read by
/// load_scenarios()). An empty document yields `base` unchanged.
inline ParameterSet load_parameters(std::string_view document, ParameterSet base = {}) {
  const nlohmann::json doc = detail::parse_document(document);
  for (const auto& [key, value] : doc.items()) {
    if (key == "scenarios") continue;
    if (key == "discount_rate_schedule") {
      if (!value.is_array()) throw ParameterError(key, "must be an array of numbers");
      base.discount_rate_schedule.clear();
      for (const auto& r : value) {
        if (!r.is_number()) throw ParameterError(key, "must be an array of numbers");
        base.discount_rate_schedule.push_back(r.get<double>());
      }
      continue;
    }
    const FieldInfo* f = find_field(key);
    if (f == nullptr) throw ParameterError(key, "unknown key");
    detail::assign_field(base, *f, value);
  }
  validate(base);
  return base;
}

inline nlohmann::ordered_json to_json(const ParameterSet& p) {
  nlohmann::ordered_json j;
  for (const auto& f : parameter_fields()) {
    std::visit([&](auto m) { j[std::string(f.name)] = p.*m; }, f.member);
  }
  if (!p.discount_rate_schedule.empty()) j["discount_rate_schedule"] = p.discount_rate_schedule;
  return j;
}

/// Full-precision JSON text; load_parameters(serialize(p)) == p.
inline std::string serialize(const ParameterSet& p) { return to_json(p).dump(2) + "\n"; }

inline nlohmann::ordered_json to_json(const ScenarioSpec& s) {
  nlohmann::ordered_json j;
  j["label"] = s.label;
  j["farm_size_ha"] = s.farm_size_ha;
  j["kind"] = to_string(s.kind);
  return j;
}

/// Reads the optional "scenarios" array of a configuration document. Each
/// entry is {"label": str, "farm_size_ha": number, "kind": "direct_sale" |
/// "land_application"}. Returns an empty list when the key is absent.
inline std::vector<ScenarioSpec> load_scenarios(std::string_view document) {
  const nlohmann::json doc = detail::parse_document(document);
  std::vector<ScenarioSpec> out;
  auto it = doc.find("scenarios");
  if (it == doc.end()) return out;
  if (!it->is_array()) throw ParameterError("scenarios", "must be an array");
  for (const auto& e : *it) {
    if (!e.is_object()) throw ParameterError("scenarios", "entries must be objects");
    ScenarioSpec s;
    for (const auto& [key, value] : e.items()) {
      if (key == "label" && value.is_string()) {
        s.label = value.get<std::string>();
      } else if (key == "farm_size_ha" && value.is_number()) {
        s.farm_size_ha = value.get<double>();
      } else if (key == "kind" && value.is_string()) {
        s.kind = scenario_kind_from_string(value.get<std::string>());
      } else {
        throw ParameterError("scenarios." + key, "unknown or mistyped key");
      }
    }
    validate(s);
    if (s.label.empty()) throw ParameterError("scenarios.label", "must be non-empty");
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference cost adjustment

struct AdjustedCosts {
  double installed = 0.0;        // $
  double indirect = 0.0;         // $
  double labor_per_y = 0.0;      // $/y
  double operation_per_y = 0.0;  // $/y
};

/// Location- and scale-adjusted reference plant costs at `capacity` t/y.
inline AdjustedCosts adjusted_reference_costs(const ParameterSet& p, double capacity) {
  if (!(capacity > 0.0)) throw ParameterError("capacity", "must be positive");
  const double scale = std::pow(capacity / p.ref_capacity, p.scale_exponent);
  return AdjustedCosts{
      .installed = p.ref_installed_cost * p.location_cost_ratio * scale,
      .indirect = p.ref_indirect_cost * p.location_cost_ratio * scale,
      .labor_per_y = p.ref_labor_cost * p.wage_ratio * scale,
      .operation_per_y = p.ref_operation_cost * p.location_cost_ratio * scale,
  };
}

/// tCO2e per tonne of biochar from its carbon mass fraction and the share of
/// that carbon counted as permanently stored.
inline double credit_factor_from_carbon(double carbon_fraction, double permanence_factor) {
  return carbon_fraction * (44.0 / 12.0) * permanence_factor;
}

}  // namespace biochar
