// SPDX-License-Identifier: Apache-2.0
/**
 * @file   select.hpp
 * @brief  K-fold cross-validated grid search over (learning rate, hidden
 *         width).
 *
 * For every pair, K models are trained on K-1 folds and scored with the
 * squared loss on the held-out fold; the pair with the smallest mean
 * validation loss wins. A diverged fold scores +inf. Ties go to the smaller
 * hidden width, then the smaller learning rate.
 *
 * Every (pair, fold) task draws its training seed from
 * derive_seed(seed, {3, pair, fold}) and results are stored by index, so
 * the outcome does not depend on the number of worker threads.
 */
#pragma once

#include "wxnet/nn.hpp"
#include "wxnet/train.hpp"
#include "wxnet/window.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace wxnet {

struct Grid {
  std::vector<double> learning_rates;
  std::vector<std::size_t> hidden_sizes;

  /// Throws ConfigError unless both lists are nonempty, positive and
  /// strictly increasing.
  void validate() const;
  std::size_t pairs() const noexcept {
    return learning_rates.size() * hidden_sizes.size();
  }

  /// hidden 32, 40, ..., 1024 and lr {0.01} U {0.05, 0.10, ..., 0.80}.
  static Grid full();
  /// 4 x 4 grid small enough for a laptop.
  static Grid desk();
};

struct PairResult {
  double learning_rate = 0.0;
  std::size_t hidden = 0;
  std::vector<double> fold_losses; // +inf for a diverged fold
  std::vector<bool> diverged;
  double mean_loss = 0.0;

  std::size_t divergent_folds() const;
  bool fully_divergent() const { return divergent_folds() == diverged.size(); }
};

struct CvResult {
  Grid grid;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  /// Hidden-major: pairs[h * learning_rates.size() + l].
  std::vector<PairResult> pairs;
  std::size_t chosen = 0;

  const PairResult &best() const { return pairs.at(chosen); }
};

/// A seeded permutation of 0..n-1 cut into K folds whose sizes differ by at
/// most one (the first n % K folds get the extra index). Throws SizeError
/// when n < K and ConfigError when K < 2.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n,
                                                    std::size_t k,
                                                    std::uint64_t seed);

/// Trains one model and returns its validation loss (+inf on divergence).
using FoldTrainer =
  std::function<double(const ArchSpec &, const TrainConfig &,
                       const WindowedSet &train, const WindowedSet &val)>;

/// fit() followed by squared_loss on the validation fold.
double default_fold_trainer(const ArchSpec &arch, const TrainConfig &cfg,
                            const WindowedSet &train, const WindowedSet &val);

struct CvOptions {
  std::size_t k = 5;
  std::uint64_t seed = 0;
  /// Fit the scaler on each fold's training part instead of once on the
  /// whole training set.
  bool per_fold_scaler = false;
  /// Worker threads; 0 means hardware concurrency.
  std::size_t threads = 1;
  FoldTrainer trainer = default_fold_trainer;
};

/// `arch` and `cfg` are templates: hidden_dim, learning_rate and seed are
/// overwritten per task. `train` is in physical units; scaling happens here.
/// Throws SelectionError when every pair diverged on every fold.
CvResult grid_search(const ArchSpec &arch, const Grid &grid,
                     const WindowedSet &train, const TrainConfig &cfg,
                     const CvOptions &opts = {});

/// Re-derives the winner from the per-pair means with the tie rule; used by
/// grid_search and handy for checking a loaded result.
std::size_t choose_pair(const std::vector<PairResult> &pairs);

Grid parse_grid_json(const std::string &text);
Grid load_grid_file(const std::filesystem::path &path);
std::string grid_to_json(const Grid &grid);

/// JSON with schema_version, grid, per-pair fold losses (null for a
/// diverged fold), divergence flags, and the chosen pair.
std::string cv_result_to_json(const CvResult &result);
/// Mean loss matrix: one row per hidden width, one column per learning rate.
void write_cv_heatmap_csv(std::ostream &out, const CvResult &result);

} // namespace wxnet
