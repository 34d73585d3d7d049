// SPDX-License-Identifier: Apache-2.0
/**
 * @file   commands.hpp
 * @brief  Option structs and entry points of the wxnet subcommands.
 */
#pragma once

#include "wxnet/evaluate.hpp"
#include "wxnet/nn.hpp"
#include "wxnet/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wxnet::cli {

struct SynthArgs {
  std::size_t days = 1;
  std::uint64_t seed = 0;
  double noise = 1.0;
  std::string start = "22/01/01 0:00";
  std::string out;
};

struct PrepArgs {
  std::string in;
  std::string train_out;
  std::string test_out;
  bool strict = false;
  std::vector<int> train_years{2022};
  std::vector<int> test_years{2021};
  std::string fallback = "none";
};

/// Model and optimizer options shared by train, cv and compare.
struct ModelArgs {
  std::string model = "mlp";
  std::string lstm_variant = "paper";
  std::size_t hidden = 344;
  double lr = 0.7;
  std::size_t batch = 64;
  std::size_t epochs = 60;
  std::uint64_t seed = 0;
  bool no_shuffle = false;
};

struct TrainArgs {
  ModelArgs m;
  std::string train;
  std::string val;
  std::string out_model;
  std::string log;
  std::size_t patience = 0;
  bool strict = false;
};

struct CvArgs {
  ModelArgs m;
  std::string train;
  std::string grid;
  std::size_t k = 5;
  std::size_t threads = 1;
  bool per_fold_scaler = false;
  std::string out;
  std::string heatmap;
  bool strict = false;
};

struct EvaluateArgs {
  std::string model_file;
  std::string test;
  std::string out_report;
  std::string plots;
  std::string space = "normalized";
  bool strict = false;
};

struct PredictArgs {
  std::string model_file;
  std::string window;
  std::string out;
};

struct CompareArgs {
  ModelArgs m;
  std::string train;
  std::string test;
  std::string out;
  std::size_t threads = 1;
  std::string space = "normalized";
  bool strict = false;
};

void run_synth(const SynthArgs &a);
void run_prep(const PrepArgs &a);
void run_train(const TrainArgs &a);
void run_cv(const CvArgs &a);
void run_evaluate(const EvaluateArgs &a);
void run_predict(const PredictArgs &a);
void run_compare(const CompareArgs &a);

/// ArchSpec for the CLI's fixed 3-step, 7-channel windows.
ArchSpec arch_for(const ModelArgs &m);

} // namespace wxnet::cli
