// SPDX-License-Identifier: Apache-2.0
#include "wxnet/model_io.hpp"
#include "wxnet/scaler.hpp"
#include "wxnet/weather_csv.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace wxnet;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path &p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    ++n;
  return n;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("wxnet-cli-") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  /// Exit status of `wxnet args`; stdout and stderr go to files in dir_.
  int run(const std::string &args) {
    const std::string cmd = "cd \"" + dir_.string() + "\" && \"" WXNET_CLI_PATH
                            "\" " + args + " >stdout.txt 2>stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string out() const { return slurp(dir_ / "stdout.txt"); }
  std::string err() const { return slurp(dir_ / "stderr.txt"); }
  fs::path path(const std::string &name) const { return dir_ / name; }

  void make_data() {
    ASSERT_EQ(run("synth --days 6 --seed 1 --noise 0.3 --out train.csv"), 0);
    ASSERT_EQ(run("synth --days 2 --seed 2 --noise 0.3 --start \"21/03/01 0:00\" "
                  "--out test.csv"),
              0);
  }

  fs::path dir_;
};

} // namespace

TEST_F(Cli, SynthRowsAndDeterminism) {
  ASSERT_EQ(run("synth --days 2 --seed 5 --out a.csv"), 0);
  ASSERT_EQ(run("synth --days 2 --seed 5 --out b.csv"), 0);
  EXPECT_EQ(line_count(path("a.csv")), 289u);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("synth --days 0 --seed 1 --out a.csv"), 2);
  EXPECT_NE(err().find("schema_version"), std::string::npos);
  EXPECT_EQ(run("train --train missing.csv --out-model m.json"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("synth --days 1 --seed 1 --start \"nonsense\" --out a.csv"), 2);
}

TEST_F(Cli, RuntimeErrorsExitOneWithJson) {
  std::ofstream(path("bad.csv")) << "Time,Temp\n1,2\n";
  EXPECT_EQ(run("prep --in bad.csv --train-out a.csv --test-out b.csv"), 1);
  const auto j = nlohmann::json::parse(err());
  EXPECT_EQ(j.at("error"), "parse");
  EXPECT_EQ(j.at("line"), 1);
}

TEST_F(Cli, PipelineSynthPrepTrainEvaluate) {
  ASSERT_EQ(run("synth --days 5 --seed 3 --start \"21/12/29 0:00\" --out full.csv"), 0);
  const std::string before = slurp(path("full.csv"));
  ASSERT_EQ(run("prep --in full.csv --train-out train.csv --test-out test.csv"), 0)
    << err();
  EXPECT_EQ(line_count(path("test.csv")), 3u * 144 + 1);
  EXPECT_EQ(line_count(path("train.csv")), 2u * 144 + 1);
  ASSERT_EQ(run("train --train train.csv --model rnn --hidden 8 --lr 0.1 "
                "--epochs 3 --seed 4 --out-model model.json --log log.csv"),
            0)
    << err();
  EXPECT_EQ(line_count(path("log.csv")), 4u);
  ASSERT_EQ(run("evaluate --model-file model.json --test test.csv "
                "--out-report report.json --plots plots"),
            0)
    << err();
  const auto report = nlohmann::json::parse(slurp(path("report.json")));
  EXPECT_EQ(report.at("schema_version"), 1);
  EXPECT_EQ(report.at("space"), "normalized");
  EXPECT_EQ(report.at("n"), 3 * 144 - 3);
  EXPECT_EQ(report.at("per_variable").size(), 7u);
  std::size_t plots = 0;
  for ([[maybe_unused]] const auto &e : fs::directory_iterator(path("plots")))
    ++plots;
  EXPECT_EQ(plots, 14u);
  EXPECT_EQ(slurp(path("full.csv")), before);

  ASSERT_EQ(run("evaluate --model-file model.json --test test.csv "
                "--out-report phys.json --space physical"),
            0);
  EXPECT_EQ(nlohmann::json::parse(slurp(path("phys.json"))).at("space"),
            "physical");
}

TEST_F(Cli, PredictMatchesHandForecast) {
  make_data();
  // Hidden layer copies the newest record, the head copies it out again,
  // so the forecast is that record pushed through the scaler and back.
  ModelParams p = zero_params(ArchSpec::mlp(7));
  auto &m = std::get<MlpParams>(p.layers);
  for (std::size_t c = 0; c < 7; ++c) {
    m.w_hidden(14 + c, c) = 1.0;
    m.w_out(c, c) = 1.0;
  }
  const MinMaxScaler scaler({-50, 0, 0, 0, 0, 0, 900}, {50, 100, 40, 360, 1500, 50, 1100});
  save_model(path("identity.json"), p, &scaler);
  const Series s = parse_csv_file(path("test.csv")).series;
  Series window;
  window.records.assign(s.records.end() - 3, s.records.end());
  write_csv_file(path("window.csv"), window);

  ASSERT_EQ(run("predict --model-file identity.json --window window.csv"), 0)
    << err();
  const auto j = nlohmann::json::parse(out());
  EXPECT_EQ(j.at("schema_version"), 1);
  const auto &f = j.at("forecast");
  const auto &last = window.records.back();
  for (std::size_t c = 0; c < 7; ++c) {
    const double expect = (last.values[c] - scaler.min(c)) /
                            (scaler.max(c) - scaler.min(c)) *
                            (scaler.max(c) - scaler.min(c)) +
                          scaler.min(c);
    EXPECT_NEAR(f.at(std::string(kChannelNames[c])).get<double>(), expect,
                1e-9 * std::max(1.0, std::abs(expect)))
      << kChannelNames[c];
  }
  EXPECT_EQ(j.at("time"), last.time.plus(std::chrono::minutes(10)).iso());
}

TEST_F(Cli, CompareEmitsThreeReports) {
  make_data();
  ASSERT_EQ(run("compare --train train.csv --test test.csv --seed 3 --hidden 8 "
                "--lr 0.1 --epochs 2 --out cmp"),
            0)
    << err();
  const auto j = nlohmann::json::parse(slurp(path("cmp/compare.json")));
  EXPECT_EQ(j.at("schema_version"), 1);
  const auto &reports = j.at("reports");
  ASSERT_EQ(reports.size(), 3u);
  for (const char *k : {"mlp", "rnn", "lstm"})
    EXPECT_EQ(reports.at(k).at("model"), k);
}

TEST_F(Cli, CvWritesResultAndHeatmap) {
  make_data();
  std::ofstream(path("grid.json"))
    << R"({"learning_rates": [0.05, 0.2], "hidden_sizes": [4, 8]})";
  ASSERT_EQ(run("cv --train train.csv --grid grid.json --k 3 --seed 2 "
                "--epochs 2 --batch 32 --out cv.json --heatmap hm.csv"),
            0)
    << err();
  const auto j = nlohmann::json::parse(slurp(path("cv.json")));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("pairs").size(), 4u);
  EXPECT_EQ(line_count(path("hm.csv")), 3u);
}

TEST_F(Cli, ConfigRoundTrip) {
  make_data();
  ASSERT_EQ(run("train --train train.csv --hidden 6 --lr 0.2 --epochs 3 "
                "--seed 9 --out-model a.json --log a.csv --dump-config run.toml"),
            0)
    << err();
  ASSERT_EQ(run("--config run.toml train --out-model b.json --log b.csv"), 0)
    << err();
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, MissingSeedIsEchoed) {
  make_data();
  ASSERT_EQ(run("train --train train.csv --hidden 4 --epochs 1 "
                "--out-model m.json --dump-config run.toml"),
            0);
  EXPECT_NE(err().find("using"), std::string::npos);
  EXPECT_NE(slurp(path("run.toml")).find("seed="), std::string::npos);
}

TEST_F(Cli, DivergenceExitsThree) {
  make_data();
  EXPECT_EQ(run("train --train train.csv --model rnn --hidden 8 --lr 50 "
                "--batch 4 --epochs 5 --seed 1 --out-model m.json"),
            3);
  const auto j = nlohmann::json::parse(err());
  EXPECT_EQ(j.at("error"), "divergence");
  EXPECT_GE(j.at("epoch").get<int>(), 1);
  EXPECT_FALSE(fs::exists(path("m.json")));
}
