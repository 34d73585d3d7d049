// SPDX-License-Identifier: Apache-2.0
#include "wxnet/train.hpp"

#include "wxnet/error.hpp"
#include "wxnet/metrics.hpp"
#include "wxnet/random.hpp"
#include "wxnet/text_format.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>

namespace wxnet {

void TrainConfig::validate(std::size_t n) const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("learning rate must be positive and finite");
  if (batch_size == 0)
    throw ConfigError("batch size must be positive");
  if (batch_size > n)
    throw ConfigError("batch size " + std::to_string(batch_size) +
                      " exceeds the " + std::to_string(n) +
                      " training samples");
}

double squared_loss(const Matrix &y, const Matrix &y_hat) {
  if (y.rows() != y_hat.rows() || y.cols() != y_hat.cols())
    throw ShapeError("squared_loss: shape mismatch " + y.shape_string() +
                     " vs " + y_hat.shape_string());
  if (y.rows() == 0)
    throw SizeError("squared_loss: empty batch");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y.data()[i] - y_hat.data()[i];
    s += e * e;
  }
  return s / static_cast<double>(y.rows());
}

namespace {

Matrix one_minus_square(const Matrix &t) {
  return map(t, [](double v) { return 1.0 - v * v; });
}

Matrix sigmoid_slope(const Matrix &s) {
  return map(s, [](double v) { return v * (1.0 - v); });
}

void accumulate(Matrix &into, const Matrix &term) { into = add(into, term); }

void mlp_backward(const MlpParams &p, const MlpCache &cache,
                  const Matrix &d_out, MlpParams &g) {
  g.w_out = matmul(transpose(cache.hidden), d_out);
  g.b_out = column_sums(d_out);
  Matrix d_pre = matmul(d_out, transpose(p.w_out));
  for (std::size_t i = 0; i < d_pre.size(); ++i)
    if (!(cache.hidden_pre.data()[i] > 0.0))
      d_pre.data()[i] = 0.0;
  g.w_hidden = matmul(transpose(cache.input), d_pre);
  g.b_hidden = column_sums(d_pre);
}

void rnn_backward(const RnnParams &p, const RnnCache &cache,
                  const Matrix &d_out, RnnParams &g) {
  const std::size_t steps = cache.inputs.size();
  g.w_out = matmul(transpose(cache.hidden[steps]), d_out);
  g.b_out = column_sums(d_out);
  Matrix d_h = matmul(d_out, transpose(p.w_out));
  const Matrix w_rec_t = transpose(p.w_recurrent);
  for (std::size_t t = steps; t-- > 0;) {
    // cache.hidden[t + 1] is h_t for input t, cache.hidden[t] is h_{t-1}.
    const Matrix d_pre = hadamard(d_h, one_minus_square(cache.hidden[t + 1]));
    accumulate(g.w_input, matmul(transpose(cache.inputs[t]), d_pre));
    accumulate(g.w_recurrent, matmul(transpose(cache.hidden[t]), d_pre));
    accumulate(g.b_hidden, column_sums(d_pre));
    d_h = matmul(d_pre, w_rec_t);
  }
}

void gate_backward(const GateParams &p, const Matrix &x, const Matrix &h_prev,
                   const Matrix &d_pre, GateParams &g, Matrix &d_h_prev) {
  accumulate(g.w_input, matmul(transpose(x), d_pre));
  accumulate(g.w_recurrent, matmul(transpose(h_prev), d_pre));
  accumulate(g.bias, column_sums(d_pre));
  accumulate(d_h_prev, matmul(d_pre, transpose(p.w_recurrent)));
}

void lstm_backward(const LstmParams &p, const LstmCache &cache,
                   const Matrix &d_out, LstmParams &g) {
  const std::size_t steps = cache.steps.size();
  g.w_out = matmul(transpose(cache.steps.back().hidden), d_out);
  g.b_out = column_sums(d_out);
  Matrix d_h = matmul(d_out, transpose(p.w_out));
  Matrix d_c(d_h.rows(), d_h.cols());
  for (std::size_t t = steps; t-- > 0;) {
    const LstmStep &s = cache.steps[t];
    const Matrix &h_prev = t ? cache.steps[t - 1].hidden : cache.h0;
    const Matrix &c_prev = t ? cache.steps[t - 1].cell : cache.c0;
    const Matrix &x = cache.inputs[t];

    const Matrix tanh_c = tanh(s.cell);
    const Matrix d_o = hadamard(d_h, tanh_c);
    const Matrix d_cell =
      add(d_c, hadamard(hadamard(d_h, s.output), one_minus_square(tanh_c)));
    const Matrix d_f = hadamard(d_cell, c_prev);
    const Matrix d_i = hadamard(d_cell, s.candidate);
    const Matrix d_g = hadamard(d_cell, s.input);

    const Matrix d_g_pre = hadamard(d_g, one_minus_square(s.candidate));
    Matrix d_h_prev(d_h.rows(), d_h.cols());
    if (p.candidate) {
      gate_backward(*p.candidate, x, h_prev, d_g_pre, *g.candidate, d_h_prev);
    } else {
      // candidate = tanh(h_prev) feeds straight back into the hidden state.
      accumulate(d_h_prev, d_g_pre);
    }
    gate_backward(p.forget, x, h_prev, hadamard(d_f, sigmoid_slope(s.forget)),
                  g.forget, d_h_prev);
    gate_backward(p.input, x, h_prev, hadamard(d_i, sigmoid_slope(s.input)),
                  g.input, d_h_prev);
    gate_backward(p.output, x, h_prev, hadamard(d_o, sigmoid_slope(s.output)),
                  g.output, d_h_prev);

    d_c = hadamard(d_cell, s.forget);
    d_h = std::move(d_h_prev);
  }
}

} // namespace

LossAndGrad loss_and_grad(const ModelParams &params, const Matrix &features,
                          const Matrix &targets, const RecurrentState &init) {
  if (features.rows() == 0)
    throw SizeError("loss_and_grad: empty batch");
  if (features.rows() != targets.rows())
    throw ShapeError("loss_and_grad: " + features.shape_string() +
                     " features vs " + targets.shape_string() + " targets");
  if (features.cols() != params.arch.feature_dim())
    throw ShapeError("loss_and_grad: features " + features.shape_string() +
                     " do not match model input width " +
                     std::to_string(params.arch.feature_dim()));

  LossAndGrad out{0.0, zero_params(params.arch)};
  const double n = static_cast<double>(features.rows());
  auto output_grad = [&](const Matrix &y_hat) {
    out.loss = squared_loss(targets, y_hat);
    return scale(subtract(y_hat, targets), 2.0 / n);
  };

  std::visit(
    [&](const auto &layers) {
      using T = std::decay_t<decltype(layers)>;
      auto &g = std::get<T>(out.grad.layers);
      if constexpr (std::is_same_v<T, MlpParams>) {
        auto fwd = mlp_forward(layers, features);
        mlp_backward(layers, fwd.cache, output_grad(fwd.output), g);
      } else if constexpr (std::is_same_v<T, RnnParams>) {
        auto fwd = rnn_forward(
          layers, to_sequence(features, params.arch.seq_len), init.hidden);
        rnn_backward(layers, fwd.cache, output_grad(fwd.output), g);
      } else {
        auto fwd = lstm_forward(
          layers, to_sequence(features, params.arch.seq_len), init);
        lstm_backward(layers, fwd.cache, output_grad(fwd.output), g);
      }
    },
    params.layers);
  return out;
}

void sgd_step_in_place(ModelParams &params, const ModelParams &grads,
                       double learning_rate) {
  auto p = named_tensors(params);
  auto g = named_tensors(grads);
  if (p.size() != g.size())
    throw ShapeError("sgd_step: parameter and gradient layouts differ");
  for (std::size_t t = 0; t < p.size(); ++t) {
    Matrix &w = *p[t].second;
    const Matrix &d = *g[t].second;
    if (w.rows() != d.rows() || w.cols() != d.cols())
      throw ShapeError("sgd_step: " + p[t].first + " is " + w.shape_string() +
                       " but its gradient is " + d.shape_string());
    for (std::size_t i = 0; i < w.size(); ++i)
      w.data()[i] -= learning_rate * d.data()[i];
  }
}

ModelParams sgd_step(const ModelParams &params, const ModelParams &grads,
                     double learning_rate) {
  ModelParams out = params;
  sgd_step_in_place(out, grads, learning_rate);
  return out;
}

std::vector<std::vector<std::size_t>>
minibatches(std::size_t n, std::size_t batch_size, std::uint64_t seed,
            std::size_t epoch, bool shuffle) {
  if (batch_size == 0)
    throw ConfigError("batch size must be positive");
  std::vector<std::size_t> order;
  if (shuffle) {
    order = permutation(n, derive_seed(seed, {2, epoch}));
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t end = std::min(n, start + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

FitResult fit(const ArchSpec &arch, const TrainConfig &cfg,
              const WindowedSet &train, const WindowedSet *val,
              const EpochCallback &on_epoch) {
  arch.validate();
  const std::size_t n = train.size();
  if (n == 0)
    throw SizeError("fit: empty training set");
  if (train.features.cols() != arch.feature_dim() ||
      train.targets.cols() != arch.output_dim)
    throw ShapeError("fit: training set " + train.features.shape_string() +
                     " -> " + train.targets.shape_string() +
                     " does not match the architecture");
  if (val && (val->features.cols() != arch.feature_dim() ||
              val->targets.cols() != arch.output_dim))
    throw ShapeError("fit: validation set does not match the architecture");
  cfg.validate(n);

  FitResult result{init_params(arch, cfg.seed), {}};
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto batches =
      minibatches(n, cfg.batch_size, cfg.seed, epoch, cfg.shuffle);
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const Matrix xb = gather_rows(train.features, batches[b]);
      const Matrix yb = gather_rows(train.targets, batches[b]);
      const auto lg = loss_and_grad(result.params, xb, yb);
      if (!std::isfinite(lg.loss))
        throw DivergenceError(epoch + 1, b + 1, lg.loss);
      sgd_step_in_place(result.params, lg.grad, cfg.learning_rate);
    }

    EpochLog entry;
    entry.epoch = epoch + 1;
    const Matrix fitted = predict(result.params, train.features);
    entry.train_loss = squared_loss(train.targets, fitted);
    if (!std::isfinite(entry.train_loss))
      throw DivergenceError(epoch + 1, batches.size(), entry.train_loss);
    entry.train_accuracy = mean_r_squared(train.targets, fitted);
    if (val && val->size() > 0) {
      const Matrix val_hat = predict(result.params, val->features);
      entry.val_loss = squared_loss(val->targets, val_hat);
      entry.val_accuracy = mean_r_squared(val->targets, val_hat);
    }
    result.log.push_back(entry);

    if (on_epoch && !on_epoch(entry))
      break;
    if (cfg.early_stop_patience && entry.val_loss) {
      if (*entry.val_loss < best_val) {
        best_val = *entry.val_loss;
        since_best = 0;
      } else if (++since_best >= *cfg.early_stop_patience) {
        break;
      }
    }
  }
  return result;
}

void write_epoch_log_csv(std::ostream &out, const std::vector<EpochLog> &log) {
  auto opt = [](const std::optional<double> &v) {
    return v ? format_double(*v) : std::string();
  };
  out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
  for (const auto &e : log)
    out << e.epoch << ',' << format_double(e.train_loss) << ','
        << format_double(e.train_accuracy) << ',' << opt(e.val_loss) << ','
        << opt(e.val_accuracy) << '\n';
}

void write_epoch_log_csv(const std::filesystem::path &path,
                         const std::vector<EpochLog> &log) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  write_epoch_log_csv(out, log);
}

} // namespace wxnet
