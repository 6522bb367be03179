#pragma once

// One-at-a-time sensitivity of NPV to a single parameter.

#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biochar/ledger.hpp"
#include "biochar/metrics.hpp"
#include "biochar/params.hpp"

namespace biochar {

/// A sweep point failed validation; `index()` is its position in the grid.
class SweepError : public ParameterError {
 public:
  SweepError(std::string key, std::size_t index, const std::string& what)
      : ParameterError(std::move(key), "grid point " + std::to_string(index) + ": " + what),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

struct SweepResult {
  std::string parameter;
  std::vector<double> grid;
  std::vector<std::string> scenario_labels;
  std::vector<std::vector<double>> npv_by_scenario;  // [scenario][grid point]
  std::vector<std::optional<double>> threshold_by_scenario;

  bool operator==(const SweepResult&) const = default;
};

struct SweepOptions {
  bool parallel = false;
};

struct Threshold {
  std::optional<double> grid_value;  // smallest grid value with NPV >= 0
  std::optional<double> crossing;    // linear zero crossing, when bracketed
};

inline Threshold find_threshold(const SweepResult& result, std::size_t scenario) {
  if (scenario >= result.npv_by_scenario.size()) {
    throw std::out_of_range("scenario index out of range");
  }
  const auto& row = result.npv_by_scenario[scenario];
  Threshold t;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] < 0.0) continue;
    t.grid_value = result.grid[i];
    if (i > 0) {
      const double x0 = result.grid[i - 1];
      const double x1 = result.grid[i];
      t.crossing = x0 + (0.0 - row[i - 1]) * (x1 - x0) / (row[i] - row[i - 1]);
    }
    break;
  }
  return t;
}

/// Evenly spaced grid from `from` to `to` inclusive (within 1e-9 of a step).
inline std::vector<double> make_grid(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive");
  if (!std::isfinite(from) || !std::isfinite(to) || to < from) {
    throw std::invalid_argument("grid bounds must satisfy from <= to");
  }
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(from + static_cast<double>(i) * step);
  return grid;
}

inline SweepResult sweep_1d(const ParameterSet& p, const std::vector<ScenarioSpec>& scenarios,
                            std::string_view parameter, const std::vector<double>& grid,
                            SweepOptions options = {}) {
  const FieldInfo* field = find_field(parameter);
  if (field == nullptr) throw ParameterError(std::string(parameter), "unknown parameter");
  if (!field->numeric()) throw ParameterError(std::string(parameter), "not a numeric parameter");
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
  }

  // Validate every point before evaluating any of them.
  std::vector<ParameterSet> points;
  points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      ParameterSet q = with_override(p, parameter, grid[i]);
      validate(q);
      points.push_back(std::move(q));
    } catch (const ParameterError& e) {
      throw SweepError(e.key(), i, e.what());
    }
  }

  SweepResult r;
  r.parameter = std::string(parameter);
  r.grid = grid;
  for (const auto& s : scenarios) r.scenario_labels.push_back(s.label);
  r.npv_by_scenario.assign(scenarios.size(), std::vector<double>(grid.size(), 0.0));

  auto eval = [&](std::size_t si, std::size_t gi) {
    const Ledger l = build_ledger(points[gi], scenarios[si]);
    return npv(l.cash_flows(), points[gi]);
  };

  if (options.parallel) {
    std::vector<std::vector<std::future<double>>> pending(scenarios.size());
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        pending[si].push_back(std::async(std::launch::async, eval, si, gi));
      }
    }
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        r.npv_by_scenario[si][gi] = pending[si][gi].get();
      }
    }
  } else {
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
      for (std::size_t gi = 0; gi < grid.size(); ++gi) r.npv_by_scenario[si][gi] = eval(si, gi);
    }
  }

  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    r.threshold_by_scenario.push_back(find_threshold(r, si).grid_value);
  }
  return r;
}

}  // namespace biochar
