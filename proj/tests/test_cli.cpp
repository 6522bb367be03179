// Drives the built command-line tool end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "biochar/biochar.hpp"
#include "oracles.hpp"

using namespace biochar;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BIOCHAR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("biochar_cli_") + info->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& sub = "") const { return (dir_ / sub).string(); }

  fs::path dir_;
};

std::size_t count_files(const fs::path& dir, std::string_view suffix) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename().string().ends_with(suffix)) ++n;
  }
  return n;
}

}  // namespace

TEST_F(Cli, RunWritesReloadableFiles) {
  ASSERT_EQ(run_cli("run --preset paper-brazil --out " + out()), 0);
  EXPECT_EQ(count_files(dir_, ".ledger.csv"), 6u);
  EXPECT_EQ(count_files(dir_, ".ledger.json"), 6u);
  EXPECT_EQ(count_files(dir_, ".metrics.json"), 6u);

  const Preset preset = paper_brazil();
  const auto cfg = oracle::slurp(out("config.json"));
  EXPECT_EQ(load_parameters(cfg), preset.params);
  EXPECT_EQ(load_scenarios(cfg), preset.scenarios);

  for (const auto& s : preset.scenarios) {
    const auto expected = evaluate_scenario(preset.params, s);
    const auto ledger =
        ledger_from_json(nlohmann::json::parse(oracle::slurp(out(s.label + ".ledger.json"))));
    EXPECT_EQ(ledger, expected.ledger);
    const auto metrics =
        metrics_from_json(nlohmann::json::parse(oracle::slurp(out(s.label + ".metrics.json"))));
    EXPECT_EQ(metrics, expected.metrics);
    const auto csv = read_csv(oracle::slurp(out(s.label + ".ledger.csv")));
    EXPECT_EQ(csv.rows.size(), 21u);
  }
  const auto ranking = read_csv(oracle::slurp(out("ranking.csv")));
  ASSERT_EQ(ranking.rows.size(), 6u);
  EXPECT_EQ(ranking.rows[0][ranking.column("scenario")], "large-B");
  EXPECT_EQ(ranking.rows[5][ranking.column("scenario")], "small-A");
}

TEST_F(Cli, FormatAndSelectors) {
  ASSERT_EQ(run_cli("run --preset paper-brazil --format json --select small --out " + out()), 0);
  EXPECT_EQ(count_files(dir_, ".ledger.json"), 2u);
  EXPECT_EQ(count_files(dir_, ".csv"), 0u);
  EXPECT_TRUE(fs::exists(out("small-B.metrics.json")));

  ASSERT_EQ(run_cli("run --preset paper-brazil --select B --select large-A --out " + out("k")),
            0);
  EXPECT_EQ(count_files(out("k"), ".metrics.json"), 4u);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run_cli("run --preset paper-brazil --select nothing --out " + out()), 2);
  fs::create_directories(dir_);
  std::ofstream(out("bad.json")) << R"({"credit_prise": 10})";
  EXPECT_EQ(run_cli("run --config " + out("bad.json") + " --out " + out("o")), 2);
  std::ofstream(out("range.json")) << R"({"bagasse_availability": 2})";
  EXPECT_EQ(run_cli("run --config " + out("range.json") + " --out " + out("o")), 2);
  EXPECT_EQ(run_cli("run --format xml --out " + out("o")), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST_F(Cli, UnwritableOutputExitsThree) {
  fs::create_directories(dir_);
  std::ofstream(out("file")) << "x";
  EXPECT_EQ(run_cli("run --preset paper-brazil --out " + out("file") + "/sub"), 3);
  EXPECT_EQ(run_cli("run --config " + out("missing.json") + " --out " + out("o")), 3);
}

TEST_F(Cli, ConfigOverlaysPreset) {
  fs::create_directories(dir_);
  std::ofstream(out("cfg.json")) << R"({"credit_price": 100,
      "scenarios": [{"label": "mine", "farm_size_ha": 15000, "kind": "land_application"}]})";
  ASSERT_EQ(run_cli("run --preset paper-brazil --config " + out("cfg.json") + " --out " +
                    out("o")),
            0);
  Preset preset = paper_brazil();
  preset.params.credit_price = 100.0;
  const auto m = metrics_from_json(nlohmann::json::parse(oracle::slurp(out("o/mine.metrics.json"))));
  EXPECT_EQ(m, evaluate_scenario(preset.params, {15000.0, ScenarioKind::LandApplication, "mine"})
                   .metrics);
}

TEST_F(Cli, SweepGrids) {
  ASSERT_EQ(run_cli("sweep --preset paper-brazil --param credit_price --from 50 --to 200 "
                    "--step 10 --out " + out()),
            0);
  const auto long_form = read_csv(oracle::slurp(out("sweep_credit_price.csv")));
  EXPECT_EQ(long_form.rows.size(), 16u * 6u);
  const auto r = sweep_from_json(nlohmann::json::parse(oracle::slurp(out("sweep_credit_price.json"))));
  EXPECT_EQ(r.grid.size(), 16u);
  const Preset preset = paper_brazil();
  EXPECT_EQ(r, sweep_1d(preset.params, preset.scenarios, "credit_price", make_grid(50, 200, 10)));
  EXPECT_EQ(read_csv(oracle::slurp(out("series/large-B_credit_price.csv"))).rows.size(), 16u);

  ASSERT_EQ(run_cli("sweep --preset paper-brazil --param bagasse_availability --from 0.5 --to 0.9 "
                    "--step 0.05 --serial --out " + out("a")),
            0);
  const auto avail =
      sweep_from_json(nlohmann::json::parse(oracle::slurp(out("a/sweep_bagasse_availability.json"))));
  EXPECT_EQ(avail.grid.size(), 9u);
}

TEST_F(Cli, SweepErrors) {
  EXPECT_EQ(run_cli("sweep --preset paper-brazil --param credit_price --from 50 --to 200 "
                    "--step 0 --out " + out()),
            2);
  EXPECT_EQ(run_cli("sweep --preset paper-brazil --param bagasse_availability --from 0.5 "
                    "--to 1.5 --step 0.5 --out " + out()),
            2);
  EXPECT_EQ(run_cli("sweep --preset paper-brazil --param nope --from 1 --to 2 --step 1 --out " +
                    out()),
            2);
}

TEST_F(Cli, CalibrateReproducesAnchors) {
  ASSERT_EQ(run_cli("calibrate --paper-anchors --out " + out()), 0);
  const auto p = load_parameters(oracle::slurp(out("calibrated.json")));
  const auto got = anchor_outputs(p);
  EXPECT_NEAR(got.small_equipment, 39.5e6, 0.001 * 39.5e6);
  EXPECT_NEAR(got.small_labor_total, 7e6, 0.001 * 7e6);
  EXPECT_NEAR(got.small_rev_cost_ratio, 1.7, 0.001 * 1.7);
  const auto residuals = read_csv(oracle::slurp(out("residuals.csv")));
  EXPECT_EQ(residuals.rows.size(), 3u);
  const auto j = nlohmann::json::parse(oracle::slurp(out("residuals.json")));
  EXPECT_DOUBLE_EQ(j["solved"]["credit_factor"].get<double>(), p.credit_factor);

  // Re-calibrating the output against its own outputs leaves it unchanged.
  ASSERT_EQ(run_cli(fmt::format("calibrate --config {} --equipment {} --labor {} --ratio {} "
                                "--out {}",
                                out("calibrated.json"), got.small_equipment,
                                got.small_labor_total, got.small_rev_cost_ratio, out("again"))),
            0);
  const auto q = load_parameters(oracle::slurp(out("again/calibrated.json")));
  EXPECT_NEAR(q.location_cost_ratio, p.location_cost_ratio, 1e-12);
  EXPECT_NEAR(q.wage_ratio, p.wage_ratio, 1e-12);
  EXPECT_NEAR(q.credit_factor, p.credit_factor, 1e-8);
}

TEST_F(Cli, CalibrateFailures) {
  EXPECT_EQ(run_cli("calibrate --equipment 39.5e6 --labor 7e6 --ratio 0 --out " + out()), 4);
  EXPECT_EQ(run_cli("calibrate --out " + out()), 2);
  EXPECT_EQ(run_cli("calibrate --paper-anchors --ratio 2 --out " + out()), 2);
}

TEST_F(Cli, ReportRebuildsRanking) {
  ASSERT_EQ(run_cli("run --preset paper-brazil --out " + out("runs")), 0);
  ASSERT_EQ(run_cli("report --in " + out("runs") + " --out " + out("rep")), 0);
  EXPECT_EQ(oracle::slurp(out("rep/ranking.csv")), oracle::slurp(out("runs/ranking.csv")));
  EXPECT_EQ(oracle::slurp(out("rep/ranking.json")), oracle::slurp(out("runs/ranking.json")));
  EXPECT_EQ(run_cli("report --in " + out("nowhere") + " --out " + out("rep")), 3);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  ASSERT_EQ(run_cli("run --preset paper-brazil --out " + out("one")), 0);
  ASSERT_EQ(run_cli("run --preset paper-brazil --out " + out("two")), 0);
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(out("one"))) {
    const auto name = e.path().filename().string();
    EXPECT_EQ(oracle::slurp(e.path().string()), oracle::slurp(out("two/" + name))) << name;
    ++compared;
  }
  EXPECT_EQ(compared, 21u);
}
