// SPDX-License-Identifier: Apache-2.0
/**
 * @file   main.cpp
 * @brief  wxnet command-line front end.
 *
 * Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 training
 * diverged. Failures are reported on stderr as one JSON object.
 */
#include "commands.hpp"

#include "wxnet/error.hpp"
#include "wxnet/random.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace wxnet;
using namespace wxnet::cli;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;

int report(int code, const std::string &kind, const std::string &message,
           nlohmann::ordered_json extra = nlohmann::ordered_json::object()) {
  nlohmann::ordered_json j = {{"schema_version", 1},
                              {"error", kind},
                              {"message", message}};
  for (auto &[key, value] : extra.items())
    j[key] = value;
  std::cerr << j.dump() << '\n';
  return code;
}

/// Seed options that were left unset get a time-derived value, echoed so the
/// run can be repeated.
void resolve_seed(CLI::Option *opt, std::uint64_t &seed) {
  if (opt->count() > 0)
    return;
  auto state = static_cast<std::uint64_t>(
    std::chrono::system_clock::now().time_since_epoch().count());
  seed = splitmix64(state) >> 11;
  opt->clear();
  opt->add_result(std::to_string(seed));
  std::cerr << "wxnet: no --seed given, using " << seed << '\n';
}

/// TOML section for one subcommand. Unset options without a default are
/// left out so the file reads back cleanly.
std::string dump_section(const CLI::App &sub) {
  std::istringstream lines(sub.config_to_str(true, false));
  std::string out = "[" + sub.get_name() + "]\n", line;
  while (std::getline(lines, line))
    if (line.size() < 3 || line.substr(line.size() - 3) != "=\"\"")
      out += line + '\n';
  return out;
}

void add_model_options(CLI::App *cmd, ModelArgs &m) {
  cmd->add_option("--model", m.model, "mlp, rnn or lstm")
    ->check(CLI::IsMember({"mlp", "rnn", "lstm"}))
    ->capture_default_str();
  cmd->add_option("--lstm-variant", m.lstm_variant, "paper or standard")
    ->check(CLI::IsMember({"paper", "standard"}))
    ->capture_default_str();
  cmd->add_option("--hidden", m.hidden, "Hidden width")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  cmd->add_option("--lr", m.lr, "Learning rate")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  cmd->add_option("--batch", m.batch, "Minibatch size")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  cmd->add_option("--epochs", m.epochs, "Training epochs")
    ->capture_default_str();
  cmd->add_flag("--no-shuffle", m.no_shuffle,
                "Keep the sample order fixed across epochs");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Neural weather forecasting toolkit: MLP, RNN and LSTM"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML file");
  std::string dump_config;
  app.add_option("--dump-config", dump_config,
                 "Write the effective options to this file")
    ->configurable(false);

  SynthArgs synth;
  auto *c_synth = app.add_subcommand("synth", "Generate synthetic station data");
  c_synth->add_option("--days", synth.days, "Days of 10-minute records")
    ->required()
    ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  auto *synth_seed = c_synth->add_option("--seed", synth.seed, "Random seed");
  c_synth->add_option("--noise", synth.noise, "Noise multiplier")
    ->check(CLI::NonNegativeNumber)
    ->capture_default_str();
  c_synth->add_option("--start", synth.start, "First timestamp, YY/MM/DD H:MM")
    ->capture_default_str();
  c_synth->add_option("--out", synth.out, "Output CSV")->required();

  PrepArgs prep;
  auto *c_prep = app.add_subcommand("prep", "Split station data by year");
  c_prep->add_option("--in", prep.in, "Station CSV")
    ->required()
    ->check(CLI::ExistingFile);
  c_prep->add_option("--train-out", prep.train_out, "Training CSV")->required();
  c_prep->add_option("--test-out", prep.test_out, "Test CSV")->required();
  c_prep->add_flag("--strict", prep.strict,
                   "Reject out-of-range values and missing fields");
  c_prep->add_option("--train-years", prep.train_years)->capture_default_str();
  c_prep->add_option("--test-years", prep.test_years)->capture_default_str();
  c_prep->add_option("--fallback", prep.fallback,
                     "Where other years go: none, train or test")
    ->check(CLI::IsMember({"none", "train", "test"}))
    ->capture_default_str();

  TrainArgs train;
  auto *c_train = app.add_subcommand("train", "Train one model");
  c_train->add_option("--train", train.train, "Training CSV")
    ->required()
    ->check(CLI::ExistingFile);
  c_train->add_option("--val", train.val, "Validation CSV")
    ->check(CLI::ExistingFile);
  add_model_options(c_train, train.m);
  auto *train_seed = c_train->add_option("--seed", train.m.seed, "Random seed");
  c_train->add_option("--patience", train.patience,
                      "Early-stop patience on validation loss (0 = off)")
    ->capture_default_str();
  c_train->add_option("--out-model", train.out_model, "Model file")->required();
  c_train->add_option("--log", train.log, "Epoch log CSV");
  c_train->add_flag("--strict", train.strict, "Strict CSV parsing");

  CvArgs cv;
  cv.m.epochs = 10;
  auto *c_cv = app.add_subcommand("cv", "K-fold grid search");
  c_cv->add_option("--train", cv.train, "Training CSV")
    ->required()
    ->check(CLI::ExistingFile);
  c_cv->add_option("--grid", cv.grid, "Grid JSON (default: 4 x 4 desk grid)")
    ->check(CLI::ExistingFile);
  c_cv->add_option("--k", cv.k, "Folds")
    ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
    ->capture_default_str();
  add_model_options(c_cv, cv.m);
  auto *cv_seed = c_cv->add_option("--seed", cv.m.seed, "Random seed");
  c_cv->add_option("--threads", cv.threads, "Worker threads (0 = all cores)")
    ->capture_default_str();
  c_cv->add_flag("--per-fold-scaler", cv.per_fold_scaler,
                 "Fit the scaler inside each fold");
  c_cv->add_option("--out", cv.out, "Result JSON")->required();
  c_cv->add_option("--heatmap", cv.heatmap, "Mean-loss CSV (hidden x lr)");
  c_cv->add_flag("--strict", cv.strict, "Strict CSV parsing");

  EvaluateArgs ev;
  auto *c_eval = app.add_subcommand("evaluate", "Score a model on test data");
  c_eval->add_option("--model-file", ev.model_file, "Model file")
    ->required()
    ->check(CLI::ExistingFile);
  c_eval->add_option("--test", ev.test, "Test CSV")
    ->required()
    ->check(CLI::ExistingFile);
  c_eval->add_option("--out-report", ev.out_report, "Report JSON")->required();
  c_eval->add_option("--plots", ev.plots, "Directory for plot CSVs");
  c_eval->add_option("--space", ev.space, "normalized or physical")
    ->check(CLI::IsMember({"normalized", "physical"}))
    ->capture_default_str();
  c_eval->add_flag("--strict", ev.strict, "Strict CSV parsing");

  PredictArgs pr;
  auto *c_pred = app.add_subcommand("predict", "Forecast the next record");
  c_pred->add_option("--model-file", pr.model_file, "Model file")
    ->required()
    ->check(CLI::ExistingFile);
  c_pred->add_option("--window", pr.window,
                     "Station CSV; the last 3 records are used")
    ->required()
    ->check(CLI::ExistingFile);
  c_pred->add_option("--out", pr.out, "Write the forecast JSON here");

  CompareArgs cmp;
  auto *c_cmp = app.add_subcommand("compare", "Train and score MLP, RNN, LSTM");
  c_cmp->add_option("--train", cmp.train, "Training CSV")
    ->required()
    ->check(CLI::ExistingFile);
  c_cmp->add_option("--test", cmp.test, "Test CSV")
    ->required()
    ->check(CLI::ExistingFile);
  add_model_options(c_cmp, cmp.m);
  c_cmp->remove_option(c_cmp->get_option("--model"));
  auto *cmp_seed = c_cmp->add_option("--seed", cmp.m.seed, "Random seed");
  c_cmp->add_option("--threads", cmp.threads, "Worker threads (0 = all cores)")
    ->capture_default_str();
  c_cmp->add_option("--space", cmp.space, "normalized or physical")
    ->check(CLI::IsMember({"normalized", "physical"}))
    ->capture_default_str();
  c_cmp->add_option("--out", cmp.out, "Output directory")->required();
  c_cmp->add_flag("--strict", cmp.strict, "Strict CSV parsing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return report(kExitUsage, "usage", e.what());
  }

  try {
    if (*c_synth)
      resolve_seed(synth_seed, synth.seed);
    else if (*c_train)
      resolve_seed(train_seed, train.m.seed);
    else if (*c_cv)
      resolve_seed(cv_seed, cv.m.seed);
    else if (*c_cmp)
      resolve_seed(cmp_seed, cmp.m.seed);

    if (!dump_config.empty()) {
      std::ofstream out(dump_config, std::ios::binary);
      if (!out)
        throw IoError("cannot open '" + dump_config + "' for writing");
      for (const auto *sub : app.get_subcommands())
        out << dump_section(*sub);
    }

    if (*c_synth)
      run_synth(synth);
    else if (*c_prep)
      run_prep(prep);
    else if (*c_train)
      run_train(train);
    else if (*c_cv)
      run_cv(cv);
    else if (*c_eval)
      run_evaluate(ev);
    else if (*c_pred)
      run_predict(pr);
    else if (*c_cmp)
      run_compare(cmp);
  } catch (const DivergenceError &e) {
    return report(kExitDiverged, e.kind(), e.what(),
                  {{"epoch", e.epoch()}, {"batch", e.batch()}});
  } catch (const ConfigError &e) {
    return report(kExitUsage, e.kind(), e.what());
  } catch (const ParseError &e) {
    return report(kExitRuntime, e.kind(), e.what(), {{"line", e.line()}});
  } catch (const Error &e) {
    return report(kExitRuntime, e.kind(), e.what());
  } catch (const std::exception &e) {
    return report(kExitRuntime, "internal", e.what());
  }
  return 0;
}
