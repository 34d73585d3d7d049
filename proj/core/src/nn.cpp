// SPDX-License-Identifier: Apache-2.0
#include "wxnet/nn.hpp"

#include "wxnet/error.hpp"
#include "wxnet/random.hpp"

#include <cmath>

namespace wxnet {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
  case ModelKind::Mlp:
    return "mlp";
  case ModelKind::SimpleRnn:
    return "rnn";
  case ModelKind::Lstm:
    return "lstm";
  }
  return "?";
}

std::string_view to_string(LstmVariant variant) {
  return variant == LstmVariant::PaperExact ? "paper" : "standard";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "mlp")
    return ModelKind::Mlp;
  if (text == "rnn")
    return ModelKind::SimpleRnn;
  if (text == "lstm")
    return ModelKind::Lstm;
  throw ConfigError("unknown model kind '" + std::string(text) + "'");
}

LstmVariant parse_lstm_variant(std::string_view text) {
  if (text == "paper")
    return LstmVariant::PaperExact;
  if (text == "standard")
    return LstmVariant::Standard;
  throw ConfigError("unknown LSTM variant '" + std::string(text) + "'");
}

ArchSpec ArchSpec::mlp(std::size_t hidden, std::size_t input,
                       std::size_t output) {
  return {ModelKind::Mlp, input, hidden, output, 1, LstmVariant::PaperExact};
}

ArchSpec ArchSpec::rnn(std::size_t hidden, std::size_t step,
                       std::size_t seq_len, std::size_t output) {
  return {ModelKind::SimpleRnn, step, hidden, output, seq_len,
          LstmVariant::PaperExact};
}

ArchSpec ArchSpec::lstm(std::size_t hidden, LstmVariant variant,
                        std::size_t step, std::size_t seq_len,
                        std::size_t output) {
  return {ModelKind::Lstm, step, hidden, output, seq_len, variant};
}

ArchSpec ArchSpec::with_hidden(std::size_t hidden) const {
  ArchSpec copy = *this;
  copy.hidden_dim = hidden;
  return copy;
}

void ArchSpec::validate() const {
  if (input_dim == 0 || hidden_dim == 0 || output_dim == 0)
    throw ConfigError("architecture dimensions must be positive");
  if (seq_len == 0)
    throw ConfigError("seq_len must be positive");
  if (kind == ModelKind::Mlp && seq_len != 1)
    throw ConfigError("seq_len applies to recurrent models only");
}

bool ModelParams::operator==(const ModelParams &other) const {
  if (!(arch == other.arch) || layers.index() != other.layers.index())
    return false;
  auto a = named_tensors(*this);
  auto b = named_tensors(other);
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !(*a[i].second == *b[i].second))
      return false;
  return true;
}

namespace {

template <typename M, typename Params>
std::vector<std::pair<std::string, M *>> list_tensors(Params &p) {
  std::vector<std::pair<std::string, M *>> out;
  auto add_gate = [&out](const std::string &prefix, auto &g) {
    out.emplace_back(prefix + ".w_input", &g.w_input);
    out.emplace_back(prefix + ".w_recurrent", &g.w_recurrent);
    out.emplace_back(prefix + ".bias", &g.bias);
  };
  std::visit(
    [&](auto &layers) {
      using T = std::decay_t<decltype(layers)>;
      if constexpr (std::is_same_v<T, MlpParams>) {
        out.emplace_back("hidden.weight", &layers.w_hidden);
        out.emplace_back("hidden.bias", &layers.b_hidden);
      } else if constexpr (std::is_same_v<T, RnnParams>) {
        out.emplace_back("cell.w_input", &layers.w_input);
        out.emplace_back("cell.w_recurrent", &layers.w_recurrent);
        out.emplace_back("cell.bias", &layers.b_hidden);
      } else {
        add_gate("forget", layers.forget);
        add_gate("input", layers.input);
        add_gate("output", layers.output);
        if (layers.candidate)
          add_gate("candidate", *layers.candidate);
      }
      out.emplace_back("head.weight", &layers.w_out);
      out.emplace_back("head.bias", &layers.b_out);
    },
    p.layers);
  return out;
}

bool is_bias(const std::string &name) {
  return name.ends_with(".bias");
}

GateParams zero_gate(std::size_t in, std::size_t hidden) {
  return {Matrix(in, hidden), Matrix(hidden, hidden), Matrix(1, hidden)};
}

Matrix gate_preactivation(const GateParams &g, const Matrix &x,
                          const Matrix &h_prev) {
  return add_row_broadcast(
    add(matmul(x, g.w_input), matmul(h_prev, g.w_recurrent)), g.bias);
}

void check_sequence(const Sequence &xs, std::size_t step_dim) {
  if (xs.empty())
    throw ShapeError("recurrent forward: empty input sequence");
  for (const auto &x : xs)
    if (x.cols() != step_dim || x.rows() != xs.front().rows())
      throw ShapeError("recurrent forward: step input " + x.shape_string() +
                       " does not match expected " +
                       std::to_string(xs.front().rows()) + "x" +
                       std::to_string(step_dim));
}

Matrix state_or_zeros(const Matrix &state, std::size_t rows,
                      std::size_t hidden) {
  if (state.empty())
    return Matrix(rows, hidden);
  if (state.rows() != rows || state.cols() != hidden)
    throw ShapeError("initial state " + state.shape_string() +
                     " does not match " + std::to_string(rows) + "x" +
                     std::to_string(hidden));
  return state;
}

} // namespace

std::vector<std::pair<std::string, Matrix *>> named_tensors(ModelParams &p) {
  return list_tensors<Matrix>(p);
}

std::vector<std::pair<std::string, const Matrix *>>
named_tensors(const ModelParams &p) {
  return list_tensors<const Matrix>(p);
}

std::size_t parameter_count(const ModelParams &p) {
  std::size_t total = 0;
  for (const auto &[name, m] : named_tensors(p))
    total += m->size();
  return total;
}

ModelParams zero_params(const ArchSpec &arch) {
  arch.validate();
  const std::size_t d = arch.input_dim, h = arch.hidden_dim,
                    out = arch.output_dim;
  ModelParams p{arch, MlpParams{}};
  switch (arch.kind) {
  case ModelKind::Mlp:
    p.layers = MlpParams{Matrix(d, h), Matrix(1, h), Matrix(h, out),
                         Matrix(1, out)};
    break;
  case ModelKind::SimpleRnn:
    p.layers = RnnParams{Matrix(d, h), Matrix(h, h), Matrix(1, h),
                         Matrix(h, out), Matrix(1, out)};
    break;
  case ModelKind::Lstm: {
    LstmParams lstm{zero_gate(d, h), zero_gate(d, h), zero_gate(d, h),
                    std::nullopt, Matrix(h, out), Matrix(1, out)};
    if (arch.lstm_variant == LstmVariant::Standard)
      lstm.candidate = zero_gate(d, h);
    p.layers = std::move(lstm);
    break;
  }
  }
  return p;
}

ModelParams init_params(const ArchSpec &arch, std::uint64_t seed) {
  ModelParams p = zero_params(arch);
  Rng rng(derive_seed(seed, {1}));
  constexpr double kStddev = 0.1; // variance 0.01
  for (auto &[name, m] : named_tensors(p)) {
    if (is_bias(name))
      continue;
    for (double &v : m->data())
      v = rng.normal(0.0, kStddev);
  }
  return p;
}

Matrix relu(const Matrix &x) {
  return map(x, [](double v) { return v > 0.0 ? v : 0.0; });
}

Matrix sigmoid(const Matrix &x) {
  return map(x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Matrix tanh(const Matrix &x) {
  return map(x, [](double v) { return std::tanh(v); });
}

Sequence to_sequence(const Matrix &features, std::size_t seq_len) {
  if (seq_len == 0 || features.cols() % seq_len != 0)
    throw ShapeError("to_sequence: " + features.shape_string() +
                     " does not split into " + std::to_string(seq_len) +
                     " equal steps");
  const std::size_t step = features.cols() / seq_len;
  Sequence xs;
  xs.reserve(seq_len);
  for (std::size_t t = 0; t < seq_len; ++t)
    xs.push_back(slice_cols(features, t * step, step));
  return xs;
}

MlpForward mlp_forward(const MlpParams &p, const Matrix &x) {
  if (x.cols() != p.w_hidden.rows())
    throw ShapeError("mlp_forward: input " + x.shape_string() +
                     " does not match hidden weights " +
                     p.w_hidden.shape_string());
  MlpForward f;
  f.cache.input = x;
  f.cache.hidden_pre = add_row_broadcast(matmul(x, p.w_hidden), p.b_hidden);
  f.cache.hidden = relu(f.cache.hidden_pre);
  f.output = add_row_broadcast(matmul(f.cache.hidden, p.w_out), p.b_out);
  return f;
}

RnnForward rnn_forward(const RnnParams &p, const Sequence &xs,
                       const Matrix &h0) {
  check_sequence(xs, p.w_input.rows());
  const std::size_t n = xs.front().rows(), hidden = p.w_recurrent.rows();
  RnnForward f;
  f.cache.inputs = xs;
  f.cache.hidden.push_back(state_or_zeros(h0, n, hidden));
  for (const auto &x : xs) {
    const Matrix &h_prev = f.cache.hidden.back();
    f.cache.hidden.push_back(tanh(add_row_broadcast(
      add(matmul(x, p.w_input), matmul(h_prev, p.w_recurrent)), p.b_hidden)));
  }
  f.output = add_row_broadcast(matmul(f.cache.hidden.back(), p.w_out), p.b_out);
  return f;
}

LstmForward lstm_forward(const LstmParams &p, const Sequence &xs,
                         const RecurrentState &init) {
  check_sequence(xs, p.forget.w_input.rows());
  const std::size_t n = xs.front().rows(),
                    hidden = p.forget.w_recurrent.rows();
  LstmForward f;
  f.cache.inputs = xs;
  f.cache.h0 = state_or_zeros(init.hidden, n, hidden);
  f.cache.c0 = state_or_zeros(init.cell, n, hidden);
  const Matrix *h_prev = &f.cache.h0;
  const Matrix *c_prev = &f.cache.c0;
  f.cache.steps.reserve(xs.size());
  for (const auto &x : xs) {
    LstmStep s;
    s.forget = sigmoid(gate_preactivation(p.forget, x, *h_prev));
    s.input = sigmoid(gate_preactivation(p.input, x, *h_prev));
    s.output = sigmoid(gate_preactivation(p.output, x, *h_prev));
    s.candidate = p.candidate
                    ? tanh(gate_preactivation(*p.candidate, x, *h_prev))
                    : tanh(*h_prev);
    s.cell = add(hadamard(s.forget, *c_prev), hadamard(s.input, s.candidate));
    s.hidden = hadamard(s.output, tanh(s.cell));
    f.cache.steps.push_back(std::move(s));
    h_prev = &f.cache.steps.back().hidden;
    c_prev = &f.cache.steps.back().cell;
  }
  f.output = add_row_broadcast(matmul(*h_prev, p.w_out), p.b_out);
  return f;
}

Matrix predict(const ModelParams &p, const Matrix &features) {
  if (features.cols() != p.arch.feature_dim())
    throw ShapeError("predict: features " + features.shape_string() +
                     " do not match model input width " +
                     std::to_string(p.arch.feature_dim()));
  return std::visit(
    [&](const auto &layers) -> Matrix {
      using T = std::decay_t<decltype(layers)>;
      if constexpr (std::is_same_v<T, MlpParams>)
        return mlp_forward(layers, features).output;
      else if constexpr (std::is_same_v<T, RnnParams>)
        return rnn_forward(layers, to_sequence(features, p.arch.seq_len))
          .output;
      else
        return lstm_forward(layers, to_sequence(features, p.arch.seq_len))
          .output;
    },
    p.layers);
}

} // namespace wxnet
