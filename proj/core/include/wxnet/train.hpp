// SPDX-License-Identifier: Apache-2.0
/**
 * @file   train.hpp
 * @brief  Squared loss, backpropagation (through time for the recurrent
 *         models), and minibatch SGD.
 *
 * The loss over a batch of n samples is (1/n) sum_k sum_i (y_ik - o_ik)^2:
 * averaged over samples, summed over the output channels. loss_and_grad()
 * returns the gradient of exactly that quantity, so one SGD step is
 * w <- w - lr * grad.
 */
#pragma once

#include "wxnet/nn.hpp"
#include "wxnet/window.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace wxnet {

struct TrainConfig {
  double learning_rate = 0.7;
  std::size_t batch_size = 64;
  std::size_t epochs = 60;
  std::uint64_t seed = 0;
  /// Re-shuffle the sample order every epoch.
  bool shuffle = true;
  /// Stop after this many epochs without a validation-loss improvement.
  /// Ignored without a validation set.
  std::optional<std::size_t> early_stop_patience;

  /// Throws ConfigError for lr <= 0, batch_size == 0 or batch_size > n.
  void validate(std::size_t n) const;
};

/// One row per finished epoch. `epoch` counts from 1. Accuracy is the mean
/// per-channel R^2 on the (normalized) data the model was trained on.
struct EpochLog {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  std::optional<double> val_loss;
  std::optional<double> val_accuracy;

  bool operator==(const EpochLog &) const = default;
};

double squared_loss(const Matrix &y, const Matrix &y_hat);

struct LossAndGrad {
  double loss = 0.0;
  ModelParams grad; // same layout as the parameters
};

/// Exact gradient of squared_loss over the batch. `features` is the flat
/// n x feature_dim matrix for every model kind. `init` sets a non-zero
/// initial recurrent state (ignored by the MLP). The ReLU derivative at 0 is 0.
LossAndGrad loss_and_grad(const ModelParams &params, const Matrix &features,
                          const Matrix &targets,
                          const RecurrentState &init = {});

inline ModelParams grad(const ModelParams &params, const Matrix &features,
                        const Matrix &targets) {
  return loss_and_grad(params, features, targets).grad;
}

/// params - lr * grads, tensor by tensor.
ModelParams sgd_step(const ModelParams &params, const ModelParams &grads,
                     double learning_rate);
void sgd_step_in_place(ModelParams &params, const ModelParams &grads,
                       double learning_rate);

/// Batches of sample indices for one epoch: a permutation of 0..n-1 (the
/// identity when shuffle is false) cut into ceil(n / batch_size) chunks, the
/// last possibly short. The permutation is seeded by derive_seed(seed,
/// {2, epoch}).
std::vector<std::vector<std::size_t>>
minibatches(std::size_t n, std::size_t batch_size, std::uint64_t seed,
            std::size_t epoch, bool shuffle = true);

struct FitResult {
  ModelParams params;
  std::vector<EpochLog> log;
};

/// Called after every epoch; return false to stop early.
using EpochCallback = std::function<bool(const EpochLog &)>;

/// Initializes with init_params(arch, cfg.seed) and runs cfg.epochs epochs of
/// minibatch SGD. Throws DivergenceError on a non-finite loss.
FitResult fit(const ArchSpec &arch, const TrainConfig &cfg,
              const WindowedSet &train, const WindowedSet *val = nullptr,
              const EpochCallback &on_epoch = {});

/// Header: epoch,train_loss,train_acc,val_loss,val_acc (empty when absent).
void write_epoch_log_csv(std::ostream &out, const std::vector<EpochLog> &log);
void write_epoch_log_csv(const std::filesystem::path &path,
                         const std::vector<EpochLog> &log);

} // namespace wxnet
