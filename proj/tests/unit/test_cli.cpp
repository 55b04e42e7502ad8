#include <gtest/gtest.h>

#include <lightcone_cli/cli.hpp>

#include <filesystem>
#include <fstream>

namespace lightcone::cli {
namespace {

using nlohmann::json;

TEST(Params, DefaultsAndNormalisation) {
  const json p = resolve_params(command_spec("hyperplane"), json{{"c", -2}, {"a", {1, 0, 0, 1}}});
  EXPECT_TRUE(p["c"].is_number_float());
  EXPECT_EQ(p["c"].get<double>(), -2.0);
  EXPECT_TRUE(p["a"][3].is_number_float());
  EXPECT_EQ(p["margin"].get<double>(), 0.1);
  EXPECT_EQ(p["n_theta"].get<int>(), 256);
  EXPECT_EQ(resolve_params(command_spec("hyperplane"), json{{"c", -2}}).dump(),
            resolve_params(command_spec("hyperplane"), json{{"c", -2.0}}).dump());
}

TEST(Params, Rejections) {
  EXPECT_THROW(resolve_params(command_spec("hyperplane"), json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(resolve_params(command_spec("hyperplane"), json{{"c", "x"}}), ConfigError);
  EXPECT_THROW(resolve_params(command_spec("section"), json{{"n_theta", 1.5}}), ConfigError);
  EXPECT_THROW(resolve_params(command_spec("section"), json::array()), ConfigError);
  EXPECT_THROW(command_spec("nope"), UsageError);
}

TEST(Params, EveryCommandHasDefaults) {
  for (const CommandSpec& c : commands()) {
    EXPECT_NO_THROW(resolve_params(c, json::object())) << c.name;
  }
}

TEST(Hash, Fnv1aVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ull);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::configuration), ExitCode::validation);
  EXPECT_EQ(exit_code_for(ErrorKind::empty_section), ExitCode::validation);
  EXPECT_EQ(exit_code_for(ErrorKind::io), ExitCode::validation);
  EXPECT_EQ(exit_code_for(ErrorKind::usage), ExitCode::usage);
  EXPECT_EQ(exit_code_for(ErrorKind::grid_mismatch), ExitCode::usage);
  EXPECT_EQ(exit_code_for(ErrorKind::resolution), ExitCode::numerical);
  EXPECT_EQ(exit_code_for(ErrorKind::blow_up), ExitCode::numerical);
}

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("lightcone_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  json report(const std::string& command) const {
    std::ifstream in(dir_ / (command + ".json"));
    return json::parse(in);
  }

  std::filesystem::path dir_;
};

TEST_F(RunTest, HyperplaneWritesReport) {
  RunConfig cfg;
  cfg.params = {{"a", {1, 0, 0, 1}}, {"c", -2}};
  cfg.out_dir = dir_;
  cfg.quiet = true;
  EXPECT_EQ(run("hyperplane", cfg), ExitCode::ok);
  const json r = report("hyperplane");
  EXPECT_EQ(r["metadata"]["command"], "hyperplane");
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["config"]["c"].get<double>(), -2.0);
  EXPECT_EQ(r["metadata"]["config_hash"].get<std::string>().size(), 16u);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "hyperplane_section.csv"));
}

TEST_F(RunTest, ConstructExpectationMismatch) {
  RunConfig cfg;
  cfg.params = {{"k_scale", 0.9}, {"expect", "trapped"}};
  cfg.out_dir = dir_;
  cfg.quiet = true;
  EXPECT_EQ(run("construct", cfg), ExitCode::numerical);
  EXPECT_FALSE(report("construct")["failures"].empty());
}

TEST_F(RunTest, GuardedErrorsMapToExitCodes) {
  RunConfig cfg;
  cfg.out_dir = dir_;
  cfg.quiet = true;
  cfg.params = {{"a", {1, 0, 0, 0}}, {"c", 1}};
  EXPECT_EQ(run_guarded("hyperplane", cfg), 1);
  cfg.params = {{"a", {1, 0, 0}}};
  EXPECT_EQ(run_guarded("hyperplane", cfg), 1);
  cfg.params = json::object();
  EXPECT_EQ(run_guarded("nope", cfg), 2);
}

}  // namespace
}  // namespace lightcone::cli
