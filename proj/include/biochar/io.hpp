#pragma once

// CSV and JSON forms of ledgers, metric reports and sweeps, plus the loaders
// that read them back.
//
// Ledger CSV columns (one row per year, year 0 carries the capital stack):
//   year,capital,maintenance,operation,labor,credit_cert,land_app,
//   biochar_sale,credits,sugarcane_uplift,fertilizer_savings,
//   operational_savings,costs_total,revenues_total,savings_total,net,
//   cumulative_net
// Sweep CSV columns: scenario,parameter,value,npv
// Series CSV columns: value,npv
// Ranking CSV columns:
//   rank,scenario,npv,irr,break_even_years,roi_total,bcd,revenue_cost_ratio
//
// Currency is written with two decimals in CSV and at full precision in JSON.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "biochar/ledger.hpp"
#include "biochar/metrics.hpp"
#include "biochar/params.hpp"
#include "biochar/sweep.hpp"

namespace biochar {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CSV primitives

inline std::string money(double v) { return fmt::format("{:.2f}", v); }

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("no CSV column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

inline CsvTable read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  CsvTable t;
  if (records.empty()) return t;
  t.header = std::move(records.front());
  t.rows.assign(std::make_move_iterator(records.begin() + 1),
                std::make_move_iterator(records.end()));
  return t;
}

// ---------------------------------------------------------------------------
// Ledger

inline std::string ledger_csv(const Ledger& l) {
  std::string out =
      "year,capital,maintenance,operation,labor,credit_cert,land_app,biochar_sale,credits,"
      "sugarcane_uplift,fertilizer_savings,operational_savings,costs_total,revenues_total,"
      "savings_total,net,cumulative_net\n";
  const std::string zero = money(0.0);
  out += fmt::format("0,{}", money(l.capital.c_i));
  for (int i = 0; i < 13; ++i) out += "," + zero;
  out += fmt::format(",{},{}\n", money(-l.capital.c_i), money(-l.capital.c_i));
  for (const auto& y : l.years) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", y.year, zero,
                       money(y.costs.maintenance), money(y.costs.operation),
                       money(y.costs.labor), money(y.costs.credit_cert),
                       money(y.costs.land_app), money(y.revenues.biochar_sale),
                       money(y.revenues.credits), money(y.revenues.sugarcane_uplift),
                       money(y.savings.fertilizer), money(y.savings.operational),
                       money(y.costs.total()), money(y.revenues.total()),
                       money(y.savings.total()), money(y.net), money(y.cumulative_net));
  }
  return out;
}

inline ojson to_json(const MassBalance& m) {
  return ojson{{"cane_t", m.cane_t},
               {"bagasse_wet_t", m.bagasse_wet_t},
               {"bagasse_available_t", m.bagasse_available_t},
               {"bagasse_dry_t", m.bagasse_dry_t},
               {"biochar_t", m.biochar_t},
               {"treated_ha", m.treated_ha},
               {"applied_t", m.applied_t},
               {"surplus_t", m.surplus_t},
               {"credits_tco2e", m.credits_tco2e}};
}

inline ojson to_json(const CapitalStack& c) {
  return ojson{{"c_es", c.c_es}, {"c_iw", c.c_iw}, {"c_pd", c.c_pd}, {"c_pv", c.c_pv},
               {"c_i", c.c_i}};
}

inline ojson to_json(const YearCosts& c) {
  return ojson{{"maintenance", c.maintenance},
               {"operation", c.operation},
               {"labor", c.labor},
               {"credit_cert", c.credit_cert},
               {"land_app", c.land_app}};
}

inline ojson to_json(const YearRevenues& r) {
  return ojson{{"biochar_sale", r.biochar_sale},
               {"credits", r.credits},
               {"sugarcane_uplift", r.sugarcane_uplift}};
}

inline ojson to_json(const YearSavings& s) {
  return ojson{{"fertilizer", s.fertilizer}, {"operational", s.operational}};
}

inline ojson to_json(const YearLine& y) {
  return ojson{{"year", y.year},
               {"costs", to_json(y.costs)},
               {"revenues", to_json(y.revenues)},
               {"savings", to_json(y.savings)},
               {"net", y.net},
               {"cumulative_net", y.cumulative_net}};
}

inline ojson to_json(const Ledger& l) {
  ojson years = ojson::array();
  for (const auto& y : l.years) years.push_back(to_json(y));
  return ojson{{"scenario", to_json(l.scenario)},
               {"mass_balance", to_json(l.mass)},
               {"capital", to_json(l.capital)},
               {"years", std::move(years)},
               {"totals", ojson{{"c_total", l.totals.c_total},
                                {"r_total", l.totals.r_total},
                                {"s_total", l.totals.s_total},
                                {"b_total", l.totals.b_total},
                                {"costs", to_json(l.totals.costs)},
                                {"revenues", to_json(l.totals.revenues)},
                                {"savings", to_json(l.totals.savings)}}}};
}

namespace detail {

template <class J>
ScenarioSpec scenario_from_json(const J& j) {
  return ScenarioSpec{j.at("farm_size_ha").template get<double>(),
                      scenario_kind_from_string(j.at("kind").template get<std::string>()),
                      j.at("label").template get<std::string>()};
}

template <class J>
YearCosts costs_from_json(const J& j) {
  return {j.at("maintenance").template get<double>(), j.at("operation").template get<double>(),
          j.at("labor").template get<double>(), j.at("credit_cert").template get<double>(),
          j.at("land_app").template get<double>()};
}

template <class J>
YearRevenues revenues_from_json(const J& j) {
  return {j.at("biochar_sale").template get<double>(), j.at("credits").template get<double>(),
          j.at("sugarcane_uplift").template get<double>()};
}

template <class J>
YearSavings savings_from_json(const J& j) {
  return {j.at("fertilizer").template get<double>(), j.at("operational").template get<double>()};
}

}  // namespace detail

inline Ledger ledger_from_json(const nlohmann::json& j) {
  Ledger l;
  l.scenario = detail::scenario_from_json(j.at("scenario"));
  const auto& m = j.at("mass_balance");
  l.mass = {m.at("cane_t").get<double>(),        m.at("bagasse_wet_t").get<double>(),
            m.at("bagasse_available_t").get<double>(), m.at("bagasse_dry_t").get<double>(),
            m.at("biochar_t").get<double>(),     m.at("treated_ha").get<double>(),
            m.at("applied_t").get<double>(),     m.at("surplus_t").get<double>(),
            m.at("credits_tco2e").get<double>()};
  const auto& c = j.at("capital");
  l.capital = {c.at("c_es").get<double>(), c.at("c_iw").get<double>(), c.at("c_pd").get<double>(),
               c.at("c_pv").get<double>(), c.at("c_i").get<double>()};
  for (const auto& y : j.at("years")) {
    YearLine line;
    line.year = y.at("year").get<int>();
    line.costs = detail::costs_from_json(y.at("costs"));
    line.revenues = detail::revenues_from_json(y.at("revenues"));
    line.savings = detail::savings_from_json(y.at("savings"));
    line.net = y.at("net").get<double>();
    line.cumulative_net = y.at("cumulative_net").get<double>();
    l.years.push_back(line);
  }
  const auto& t = j.at("totals");
  l.totals.c_total = t.at("c_total").get<double>();
  l.totals.r_total = t.at("r_total").get<double>();
  l.totals.s_total = t.at("s_total").get<double>();
  l.totals.b_total = t.at("b_total").get<double>();
  l.totals.costs = detail::costs_from_json(t.at("costs"));
  l.totals.revenues = detail::revenues_from_json(t.at("revenues"));
  l.totals.savings = detail::savings_from_json(t.at("savings"));
  return l;
}

// ---------------------------------------------------------------------------
// Metrics

inline ojson to_json(const IrrResult& r) {
  if (r.rate) return ojson{{"status", to_string(r.status)}, {"value", *r.rate}};
  return ojson{{"status", to_string(r.status)}, {"value", "undefined"}};
}

inline ojson to_json(const MetricsReport& m) {
  ojson be = m.break_even_years ? ojson{{"status", "reached"}, {"years", *m.break_even_years}}
                                : ojson{{"status", "never"}, {"years", "never"}};
  return ojson{{"label", m.label},
               {"break_even", std::move(be)},
               {"roi_per_year", m.roi_per_year},
               {"roi_total", m.roi_total},
               {"roi_average", m.roi_average},
               {"b_total", m.b_total},
               {"c_total", m.c_total},
               {"bcd", m.bcd},
               {"npv", m.npv},
               {"irr", to_json(m.irr)},
               {"revenue_cost_ratio", m.revenue_cost_ratio}};
}

inline IrrStatus irr_status_from_string(std::string_view s) {
  for (auto st : {IrrStatus::Defined, IrrStatus::AllZero, IrrStatus::NoSignChange,
                  IrrStatus::MultipleSignChanges}) {
    if (to_string(st) == s) return st;
  }
  throw std::invalid_argument("unknown IRR status '" + std::string(s) + "'");
}

inline MetricsReport metrics_from_json(const nlohmann::json& j) {
  MetricsReport m;
  m.label = j.at("label").get<std::string>();
  const auto& be = j.at("break_even");
  if (be.at("status").get<std::string>() == "reached") {
    m.break_even_years = be.at("years").get<double>();
  }
  m.roi_per_year = j.at("roi_per_year").get<std::vector<double>>();
  m.roi_total = j.at("roi_total").get<double>();
  m.roi_average = j.at("roi_average").get<double>();
  m.b_total = j.at("b_total").get<double>();
  m.c_total = j.at("c_total").get<double>();
  m.bcd = j.at("bcd").get<double>();
  m.npv = j.at("npv").get<double>();
  const auto& irr_j = j.at("irr");
  m.irr.status = irr_status_from_string(irr_j.at("status").get<std::string>());
  if (m.irr.status == IrrStatus::Defined) m.irr.rate = irr_j.at("value").get<double>();
  m.revenue_cost_ratio = j.at("revenue_cost_ratio").get<double>();
  return m;
}

/// Scenarios ordered by descending NPV.
inline std::string ranking_csv(std::vector<MetricsReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const auto& a, const auto& b) { return a.npv > b.npv; });
  std::string out = "rank,scenario,npv,irr,break_even_years,roi_total,bcd,revenue_cost_ratio\n";
  int rank = 1;
  for (const auto& m : reports) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", rank++, csv_field(m.label), money(m.npv),
                       m.irr.rate ? fmt::format("{:.6f}", *m.irr.rate) : "undefined",
                       m.break_even_years ? fmt::format("{:.4f}", *m.break_even_years) : "never",
                       fmt::format("{:.4f}", m.roi_total), money(m.bcd),
                       fmt::format("{:.6f}", m.revenue_cost_ratio));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep

inline std::string sweep_csv(const SweepResult& r) {
  std::string out = "scenario,parameter,value,npv\n";
  for (std::size_t s = 0; s < r.scenario_labels.size(); ++s) {
    for (std::size_t g = 0; g < r.grid.size(); ++g) {
      out += fmt::format("{},{},{},{}\n", csv_field(r.scenario_labels[s]), r.parameter, r.grid[g],
                         money(r.npv_by_scenario[s][g]));
    }
  }
  return out;
}

inline std::string series_csv(const SweepResult& r, std::size_t scenario) {
  std::string out = "value,npv\n";
  for (std::size_t g = 0; g < r.grid.size(); ++g) {
    out += fmt::format("{},{}\n", r.grid[g], money(r.npv_by_scenario.at(scenario)[g]));
  }
  return out;
}

inline ojson to_json(const SweepResult& r) {
  ojson scenarios = ojson::array();
  for (std::size_t s = 0; s < r.scenario_labels.size(); ++s) {
    const Threshold t = find_threshold(r, s);
    ojson th = t.grid_value ? ojson{{"status", "found"}, {"value", *t.grid_value}}
                            : ojson{{"status", "none"}, {"value", "none"}};
    if (t.crossing) th["crossing"] = *t.crossing;
    scenarios.push_back(ojson{{"label", r.scenario_labels[s]},
                              {"npv", r.npv_by_scenario[s]},
                              {"threshold", std::move(th)}});
  }
  return ojson{{"parameter", r.parameter}, {"grid", r.grid}, {"scenarios", std::move(scenarios)}};
}

inline SweepResult sweep_from_json(const nlohmann::json& j) {
  SweepResult r;
  r.parameter = j.at("parameter").get<std::string>();
  r.grid = j.at("grid").get<std::vector<double>>();
  for (const auto& s : j.at("scenarios")) {
    r.scenario_labels.push_back(s.at("label").get<std::string>());
    r.npv_by_scenario.push_back(s.at("npv").get<std::vector<double>>());
    const auto& th = s.at("threshold");
    if (th.at("status").get<std::string>() == "found") {
      r.threshold_by_scenario.emplace_back(th.at("value").get<double>());
    } else {
      r.threshold_by_scenario.emplace_back(std::nullopt);
    }
  }
  return r;
}

}  // namespace biochar
