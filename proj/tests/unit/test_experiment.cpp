#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "btlab/experiment.hpp"
#include "btlab/version.hpp"

using namespace btlab;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("btlab-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

json tree_config(const std::filesystem::path& out) {
  return {{"fields", {{{"name", "Q_2"}, {"descriptor", {{"p", 2}, {"e", 1}}}}}},
          {"d", 2},
          {"r_min", 3},
          {"r_max", 3},
          {"output_dir", out.string()},
          {"seed", 5}};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Experiment, ConfigValidation) {
  EXPECT_THROW(parse_experiment_config(json{{"fields", json::array()}}), InvalidInput);
  EXPECT_THROW(parse_experiment_config(json::array()), InvalidInput);
  auto doc = tree_config("x");
  doc["r_min"] = 4;
  EXPECT_THROW(parse_experiment_config(doc), InvalidInput);
  doc = tree_config("x");
  doc["budgets"] = {{"vertices", 0}};
  EXPECT_THROW(parse_experiment_config(doc), InvalidInput);
  doc = tree_config("x");
  doc["colour"] = "blue";
  EXPECT_THROW(parse_experiment_config(doc), InvalidInput);
  doc = tree_config("x");
  doc["fields"].push_back(doc["fields"][0]);
  EXPECT_THROW(parse_experiment_config(doc), InvalidInput);
  doc = tree_config("x");
  doc["fields"][0]["descriptor"]["p"] = 9;
  EXPECT_THROW(parse_experiment_config(doc), InvalidInput);
  const auto config = parse_experiment_config(tree_config("x"));
  EXPECT_EQ(config.cache_dir, std::filesystem::path("x") / "cache");
  EXPECT_EQ(config.seed, 5u);
}

TEST(Experiment, TreeBallReport) {
  const auto dir = scratch_dir("tree");
  const auto config = parse_experiment_config(tree_config(dir));
  const auto report = run_experiment(config);
  ASSERT_EQ(report.at("balls").size(), 1u);
  const auto& cell = report.at("balls")[0];
  EXPECT_EQ(cell.at("status"), "ok");
  EXPECT_EQ(cell.at("vertices"), 22);
  EXPECT_EQ(cell.at("center_degree"), 3);
  EXPECT_TRUE(cell.at("shuffle_invariant").get<bool>());
  EXPECT_FALSE(cell.contains("geometry"));
  EXPECT_EQ(report.at("config"), tree_config(dir));
  EXPECT_EQ(report.at("closeness").at("matrix"), json::parse("[[3]]"));
  std::filesystem::remove_all(dir);
}

TEST(Experiment, DeterministicAndCached) {
  const auto dir = scratch_dir("determinism");
  json doc = {{"fields",
               {{{"name", "Q_2"}, {"descriptor", {{"p", 2}, {"e", 1}}}},
                {{"name", "Q_2[sqrt2]"}, {"descriptor", {{"p", 2}, {"e", 2}}}},
                {{"name", "F_2((t))"}, {"descriptor", {{"p", 2}, {"e", "inf"}}}}}},
              {"d", 3},
              {"r_min", 1},
              {"r_max", 2},
              {"output_dir", (dir / "a").string()},
              {"cache_dir", (dir / "cache").string()}};
  auto config = parse_experiment_config(doc);
  const auto cold = dump_report(run_experiment(config));
  EXPECT_FALSE(std::filesystem::is_empty(dir / "cache"));
  const auto warm = dump_report(run_experiment(config));
  EXPECT_EQ(cold, warm);
  write_report(config, json::parse(cold));
  EXPECT_EQ(slurp(dir / "a" / "report.json"), cold);

  const auto report = json::parse(cold);
  EXPECT_EQ(report.at("closeness").at("matrix"), json::parse("[[2,1,1],[1,2,2],[1,2,2]]"));
  EXPECT_EQ(report.at("version"), kVersion);
  for (const auto& cell : report.at("balls")) {
    EXPECT_EQ(cell.at("status"), "ok");
    EXPECT_EQ(cell.at("geometry").at("status"), "ok");
    EXPECT_EQ(cell.at("germs").at("at_center"), 6);
    EXPECT_TRUE(cell.at("germs").at("matches_type_label").get<bool>());
  }
  std::filesystem::remove_all(dir);
}

TEST(Experiment, BudgetErrorsStayInTheirCell) {
  const auto dir = scratch_dir("budget");
  auto doc = tree_config(dir);
  doc["r_min"] = 1;
  doc["budgets"] = {{"vertices", 12}};
  doc["cache"] = false;
  const auto report = run_experiment(parse_experiment_config(doc));
  const auto& balls = report.at("balls");
  ASSERT_EQ(balls.size(), 3u);
  EXPECT_EQ(balls[0].at("status"), "ok");
  EXPECT_EQ(balls[1].at("status"), "ok");
  EXPECT_EQ(balls[2].at("status"), "budget");
  EXPECT_EQ(report.at("summary").at("failed_cells"), 1);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, AtomicWrite) {
  const auto dir = scratch_dir("atomic");
  atomic_write(dir / "nested" / "f.txt", "one");
  atomic_write(dir / "nested" / "f.txt", "two");
  EXPECT_EQ(slurp(dir / "nested" / "f.txt"), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir / "nested")) ++files;
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
}
