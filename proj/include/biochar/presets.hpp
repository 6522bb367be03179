#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biochar/calibration.hpp"
#include "biochar/params.hpp"

namespace biochar {

struct Preset {
  ParameterSet params;
  std::vector<ScenarioSpec> scenarios;
};

/// Small/medium/large farms (10000/20000/50000 ha), each as direct sale (A)
/// and land application (B), in that order.
inline std::vector<ScenarioSpec> paper_scenarios() {
  return {
      {10000.0, ScenarioKind::DirectSale, "small-A"},
      {10000.0, ScenarioKind::LandApplication, "small-B"},
      {20000.0, ScenarioKind::DirectSale, "medium-A"},
      {20000.0, ScenarioKind::LandApplication, "medium-B"},
      {50000.0, ScenarioKind::DirectSale, "large-A"},
      {50000.0, ScenarioKind::LandApplication, "large-B"},
  };
}

/// Default parameters calibrated to the published small-farm anchors, with
/// the six farm scenarios.
inline Preset paper_brazil() {
  return Preset{calibrate(ParameterSet{}, paper_anchors()), paper_scenarios()};
}

inline Preset preset_by_name(std::string_view name) {
  if (name == "paper-brazil") return paper_brazil();
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace biochar
