// SPDX-License-Identifier: Apache-2.0
/**
 * @file   nn.hpp
 * @brief  The three forecasting networks and their forward passes.
 *
 * Batches are row-major: one sample per row. The MLP consumes the flattened
 * window (n x 21); the recurrent models consume the same window as a
 * sequence of seq_len matrices of n x 7, split record-major, and read the
 * forecast off the final hidden state.
 *
 *  MLP:   y = relu(x W1 + b1) W2 + b2
 *  RNN:   h_t = tanh(x_t Wx + h_{t-1} Wh + b),  y = h_T Wy + by
 *  LSTM:  f, i, o = sigmoid(x_t Wx_g + h_{t-1} Wh_g + b_g)
 *         c_t = f * c_{t-1} + i * g_t,  h_t = o * tanh(c_t),  y = h_T Wy + by
 *         g_t = tanh(h_{t-1})                        (PaperExact)
 *         g_t = tanh(x_t Wx_c + h_{t-1} Wh_c + b_c)  (Standard)
 *
 * Note that with h_0 = c_0 = 0 the PaperExact cell never leaves the origin:
 * g_1 = tanh(0) = 0 gives c_1 = 0 and h_1 = 0, and so on. Its forecast is the
 * head bias regardless of input. The non-zero initial state accepted by
 * lstm_forward() exists so the cell arithmetic can still be exercised.
 */
#pragma once

#include "wxnet/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wxnet {

enum class ModelKind { Mlp, SimpleRnn, Lstm };
enum class LstmVariant { PaperExact, Standard };

std::string_view to_string(ModelKind kind);
std::string_view to_string(LstmVariant variant);
ModelKind parse_model_kind(std::string_view text);
LstmVariant parse_lstm_variant(std::string_view text);

/// Architecture descriptor. For recurrent kinds input_dim is the width of one
/// time step and the flat feature width is input_dim * seq_len.
struct ArchSpec {
  ModelKind kind = ModelKind::Mlp;
  std::size_t input_dim = 21;
  std::size_t hidden_dim = 344;
  std::size_t output_dim = 7;
  std::size_t seq_len = 1;
  LstmVariant lstm_variant = LstmVariant::PaperExact;

  static ArchSpec mlp(std::size_t hidden, std::size_t input = 21,
                      std::size_t output = 7);
  static ArchSpec rnn(std::size_t hidden, std::size_t step = 7,
                      std::size_t seq_len = 3, std::size_t output = 7);
  static ArchSpec lstm(std::size_t hidden,
                       LstmVariant variant = LstmVariant::PaperExact,
                       std::size_t step = 7, std::size_t seq_len = 3,
                       std::size_t output = 7);
  /// Same kind and dims, different hidden width.
  ArchSpec with_hidden(std::size_t hidden) const;

  bool recurrent() const noexcept { return kind != ModelKind::Mlp; }
  std::size_t feature_dim() const noexcept {
    return recurrent() ? input_dim * seq_len : input_dim;
  }
  /// Throws ConfigError on zero dims or seq_len != 1 for the MLP.
  void validate() const;

  bool operator==(const ArchSpec &) const = default;
};

struct MlpParams {
  Matrix w_hidden, b_hidden; // d x h, 1 x h
  Matrix w_out, b_out;       // h x d_out, 1 x d_out
};

struct RnnParams {
  Matrix w_input, w_recurrent, b_hidden; // d x h, h x h, 1 x h
  Matrix w_out, b_out;
};

struct GateParams {
  Matrix w_input, w_recurrent, bias;
};

struct LstmParams {
  GateParams forget, input, output;
  std::optional<GateParams> candidate; // present only for Standard
  Matrix w_out, b_out;
};

struct ModelParams {
  ArchSpec arch;
  std::variant<MlpParams, RnnParams, LstmParams> layers;

  bool operator==(const ModelParams &other) const;
};

/// Stable (name, tensor) listing in a fixed order; used by the optimizer,
/// serialization, and gradient checks.
std::vector<std::pair<std::string, Matrix *>> named_tensors(ModelParams &p);
std::vector<std::pair<std::string, const Matrix *>>
named_tensors(const ModelParams &p);
std::size_t parameter_count(const ModelParams &p);

/// Zero-filled parameters of the right shapes.
ModelParams zero_params(const ArchSpec &arch);

/// Weights i.i.d. Normal(mean 0, variance 0.01) drawn tensor by tensor in
/// named_tensors() order, row-major, from Rng(derive_seed(seed, {1}));
/// biases exactly zero.
ModelParams init_params(const ArchSpec &arch, std::uint64_t seed);

Matrix relu(const Matrix &x);
Matrix sigmoid(const Matrix &x);
Matrix tanh(const Matrix &x);

using Sequence = std::vector<Matrix>;

/// Splits n x (seq_len * step) into seq_len blocks of n x step, oldest first.
Sequence to_sequence(const Matrix &features, std::size_t seq_len);

struct MlpCache {
  Matrix input, hidden_pre, hidden;
};
struct MlpForward {
  Matrix output;
  MlpCache cache;
};
MlpForward mlp_forward(const MlpParams &p, const Matrix &x);

struct RnnCache {
  Sequence inputs;
  std::vector<Matrix> hidden; // h_0 .. h_T
};
struct RnnForward {
  Matrix output;
  RnnCache cache;
};
/// h0 may be empty, meaning zeros.
RnnForward rnn_forward(const RnnParams &p, const Sequence &xs,
                       const Matrix &h0 = {});

struct RecurrentState {
  Matrix hidden, cell; // empty means zeros
};
struct LstmStep {
  Matrix forget, input, output, candidate, cell, hidden;
};
struct LstmCache {
  Sequence inputs;
  Matrix h0, c0;
  std::vector<LstmStep> steps;
};
struct LstmForward {
  Matrix output;
  LstmCache cache;
};
LstmForward lstm_forward(const LstmParams &p, const Sequence &xs,
                         const RecurrentState &init = {});

/// Forecast for flat features (n x feature_dim) with any model kind.
Matrix predict(const ModelParams &p, const Matrix &features);

} // namespace wxnet
