// biochar: run scenarios, sweep a parameter, calibrate against anchors, and
// rebuild the ranking from saved metric files.
//
// Exit codes: 0 ok, 2 configuration or usage error, 3 I/O failure,
// 4 calibration failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "biochar/biochar.hpp"

namespace fs = std::filesystem;
using namespace biochar;

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;
constexpr int kCalibrationError = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Manifest {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::string format = "both";
  std::vector<std::string> selectors;

  bool csv() const { return format != "json"; }
  bool json() const { return format != "csv"; }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes are funnelled through here one at a time.
class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_)) {
      throw IoError("cannot create output directory " + root_.string());
    }
  }

  void write(const fs::path& relative, std::string_view text) {
    const fs::path path = root_ / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
  }

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
};

std::string file_stem(std::string_view label) {
  std::string s(label);
  for (char& c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return s;
}

struct Loaded {
  ParameterSet params;
  std::vector<ScenarioSpec> scenarios;
};

Loaded load_inputs(const Manifest& m) {
  Loaded in;
  in.scenarios = paper_scenarios();
  if (!m.preset.empty()) {
    Preset p = preset_by_name(m.preset);
    in.params = std::move(p.params);
    in.scenarios = std::move(p.scenarios);
  }
  if (!m.config_path.empty()) {
    const std::string doc = read_file(m.config_path);
    in.params = load_parameters(doc, in.params);
    auto scenarios = load_scenarios(doc);
    if (!scenarios.empty()) in.scenarios = std::move(scenarios);
  }
  return in;
}

bool matches(const ScenarioSpec& s, std::string_view sel) {
  if (s.label == sel) return true;
  const auto dash = s.label.find('-');
  if (dash != std::string::npos && std::string_view(s.label).substr(0, dash) == sel) return true;
  if ((sel == "A" || sel == "direct_sale") && s.kind == ScenarioKind::DirectSale) return true;
  if ((sel == "B" || sel == "land_application") && s.kind == ScenarioKind::LandApplication) {
    return true;
  }
  return false;
}

std::vector<ScenarioSpec> select(const std::vector<ScenarioSpec>& all,
                                 const std::vector<std::string>& selectors) {
  std::vector<ScenarioSpec> out;
  for (const auto& s : all) {
    if (selectors.empty() ||
        std::any_of(selectors.begin(), selectors.end(),
                    [&](const std::string& sel) { return matches(s, sel); })) {
      out.push_back(s);
    }
  }
  if (out.empty()) throw UsageError("no scenarios selected");
  return out;
}

std::string config_document(const ParameterSet& p, const std::vector<ScenarioSpec>& scenarios) {
  ojson j = to_json(p);
  ojson list = ojson::array();
  for (const auto& s : scenarios) list.push_back(to_json(s));
  j["scenarios"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string summary_line(const MetricsReport& m) {
  return fmt::format("{:<12} break-even {:>7}  NPV {:>10} M$  IRR {:>8}  ROI total {:>8.1f}%",
                     m.label,
                     m.break_even_years ? fmt::format("{:.2f} y", *m.break_even_years) : "never",
                     fmt::format("{:.2f}", m.npv / 1e6),
                     m.irr.rate ? fmt::format("{:.2f}%", *m.irr.rate * 100.0) : "n/a",
                     m.roi_total);
}

std::string ranking_json(std::vector<MetricsReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const auto& a, const auto& b) { return a.npv > b.npv; });
  ojson j = ojson::array();
  for (const auto& m : reports) j.push_back(to_json(m));
  return j.dump(2) + "\n";
}

void write_ranking(OutputDir& out, const Manifest& m, const std::vector<MetricsReport>& reports) {
  if (m.csv()) out.write("ranking.csv", ranking_csv(reports));
  if (m.json()) out.write("ranking.json", ranking_json(reports));
}

int cmd_run(const Manifest& m) {
  const Loaded in = load_inputs(m);
  const auto scenarios = select(in.scenarios, m.selectors);

  std::vector<ScenarioResult> results;
  for (const auto& s : scenarios) results.push_back(evaluate_scenario(in.params, s));

  OutputDir out(m.out_dir);
  out.write("config.json", config_document(in.params, scenarios));
  std::vector<MetricsReport> reports;
  for (const auto& r : results) {
    const std::string stem = file_stem(r.ledger.scenario.label);
    if (m.csv()) out.write(stem + ".ledger.csv", ledger_csv(r.ledger));
    if (m.json()) out.write(stem + ".ledger.json", to_json(r.ledger).dump(2) + "\n");
    out.write(stem + ".metrics.json", to_json(r.metrics).dump(2) + "\n");
    reports.push_back(r.metrics);
    std::cout << summary_line(r.metrics) << "\n";
  }
  write_ranking(out, m, reports);
  return 0;
}

struct SweepArgs {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  bool serial = false;
};

int cmd_sweep(const Manifest& m, const SweepArgs& a) {
  const Loaded in = load_inputs(m);
  const auto scenarios = select(in.scenarios, m.selectors);
  const auto grid = make_grid(a.from, a.to, a.step);
  const SweepResult r = sweep_1d(in.params, scenarios, a.param, grid, {.parallel = !a.serial});

  OutputDir out(m.out_dir);
  const std::string stem = "sweep_" + file_stem(a.param);
  if (m.csv()) {
    out.write(stem + ".csv", sweep_csv(r));
    for (std::size_t s = 0; s < r.scenario_labels.size(); ++s) {
      out.write(fs::path("series") / (file_stem(r.scenario_labels[s]) + "_" + file_stem(a.param) +
                                      ".csv"),
                series_csv(r, s));
    }
  }
  if (m.json()) out.write(stem + ".json", to_json(r).dump(2) + "\n");

  std::cout << fmt::format("{} points x {} scenarios over {}\n", r.grid.size(),
                           r.scenario_labels.size(), r.parameter);
  for (std::size_t s = 0; s < r.scenario_labels.size(); ++s) {
    const auto& t = r.threshold_by_scenario[s];
    std::cout << fmt::format("{:<12} NPV >= 0 from {}\n", r.scenario_labels[s],
                             t ? fmt::format("{}", *t) : "none on grid");
  }
  return 0;
}

struct CalibrateArgs {
  bool published = false;
  std::optional<double> equipment;
  std::optional<double> labor;
  std::optional<double> ratio;
};

int cmd_calibrate(const Manifest& m, const CalibrateArgs& a) {
  const bool explicit_anchors = a.equipment || a.labor || a.ratio;
  if (a.published && explicit_anchors) {
    throw UsageError("--paper-anchors cannot be combined with explicit anchors");
  }
  if (!a.published && !(a.equipment && a.labor && a.ratio)) {
    throw UsageError("give --paper-anchors or all of --equipment, --labor, --ratio");
  }
  const CalibrationAnchors anchors =
      a.published ? paper_anchors() : CalibrationAnchors{*a.equipment, *a.labor, *a.ratio};

  const Loaded in = load_inputs(m);
  const ParameterSet solved = calibrate(in.params, anchors);
  const AnchorOutputs got = anchor_outputs(solved);

  struct Row {
    const char* name;
    double anchor;
    double model;
  };
  const Row rows[] = {{"small_equipment", anchors.small_equipment, got.small_equipment},
                      {"small_labor_total", anchors.small_labor_total, got.small_labor_total},
                      {"small_rev_cost_ratio", anchors.small_rev_cost_ratio,
                       got.small_rev_cost_ratio}};

  OutputDir out(m.out_dir);
  out.write("calibrated.json", config_document(solved, in.scenarios));

  std::string csv = "quantity,anchor,model,relative_error\n";
  ojson residuals = ojson::array();
  for (const auto& r : rows) {
    const double rel = r.anchor != 0.0 ? (r.model - r.anchor) / r.anchor : r.model;
    csv += fmt::format("{},{},{},{:.3e}\n", r.name, r.anchor, r.model, rel);
    residuals.push_back(ojson{{"quantity", r.name},
                              {"anchor", r.anchor},
                              {"model", r.model},
                              {"relative_error", rel}});
  }
  const ojson solved_j{{"location_cost_ratio", solved.location_cost_ratio},
                       {"wage_ratio", solved.wage_ratio},
                       {"credit_factor", solved.credit_factor}};
  if (m.csv()) out.write("residuals.csv", csv);
  if (m.json()) {
    out.write("residuals.json",
              ojson{{"solved", solved_j}, {"residuals", residuals}}.dump(2) + "\n");
  }

  std::cout << fmt::format("location_cost_ratio {:.10f}\nwage_ratio          {:.10f}\n"
                           "credit_factor       {:.10f}\n",
                           solved.location_cost_ratio, solved.wage_ratio, solved.credit_factor);
  std::cout << csv;
  return 0;
}

int cmd_report(const Manifest& m, const std::string& in_dir) {
  const fs::path dir = in_dir.empty() ? fs::path(m.out_dir) : fs::path(in_dir);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("no such directory " + dir.string());

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 13 && name.ends_with(".metrics.json")) files.push_back(e.path());
  }
  if (ec) throw IoError("cannot list " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<MetricsReport> reports;
  for (const auto& f : files) {
    try {
      reports.push_back(metrics_from_json(nlohmann::json::parse(read_file(f))));
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(f.filename().string(), e.what());
    }
  }
  reports.erase(std::remove_if(reports.begin(), reports.end(),
                               [&](const MetricsReport& r) {
                                 if (m.selectors.empty()) return false;
                                 return std::none_of(
                                     m.selectors.begin(), m.selectors.end(),
                                     [&](const std::string& sel) {
                                       return r.label == sel ||
                                              r.label.substr(0, r.label.find('-')) == sel;
                                     });
                               }),
                reports.end());
  if (reports.empty()) throw UsageError("no scenarios selected");

  OutputDir out(m.out_dir);
  write_ranking(out, m, reports);
  std::stable_sort(reports.begin(), reports.end(),
                   [](const auto& a, const auto& b) { return a.npv > b.npv; });
  int rank = 1;
  for (const auto& r : reports) std::cout << fmt::format("{:>2}. ", rank++) << summary_line(r) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biochar-from-bagasse techno-economic model"};
  app.require_subcommand(1);
  app.fallthrough();

  Manifest m;
  app.add_option("--config", m.config_path, "JSON parameter/scenario file");
  app.add_option("--out", m.out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", m.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
  app.add_option("--preset", m.preset, "Built-in parameter set")
      ->check(CLI::IsMember({"paper-brazil"}));
  app.add_option("--select", m.selectors,
                 "Scenario label, size class (small/medium/large) or kind (A/B)");

  auto* run = app.add_subcommand("run", "Evaluate scenarios and write ledgers and metrics");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "NPV over a one-parameter grid");
  sweep->add_option("--param", sa.param, "Parameter name")->required();
  sweep->add_option("--from", sa.from)->required();
  sweep->add_option("--to", sa.to)->required();
  sweep->add_option("--step", sa.step)->required();
  sweep->add_flag("--serial", sa.serial, "Evaluate grid points on one thread");

  CalibrateArgs ca;
  auto* cal = app.add_subcommand("calibrate", "Solve location, wage and credit ratios");
  cal->add_flag("--paper-anchors", ca.published, "Use 39.5e6 / 7e6 / 1.7");
  cal->add_option("--equipment", ca.equipment, "Small-farm equipment cost anchor ($)");
  cal->add_option("--labor", ca.labor, "Small-farm total labor anchor ($)");
  cal->add_option("--ratio", ca.ratio, "Small-farm revenue/cost anchor");

  std::string report_in;
  auto* report = app.add_subcommand("report", "Rank saved *.metrics.json files by NPV");
  report->add_option("--in", report_in, "Directory holding metric files (default: --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return cmd_run(m);
    if (*sweep) return cmd_sweep(m, sa);
    if (*cal) return cmd_calibrate(m, ca);
    if (*report) return cmd_report(m, report_in);
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const CalibrationError& e) {
    std::cerr << "calibration failed: " << e.what() << "\n";
    return kCalibrationError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
