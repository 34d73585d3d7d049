// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"
#include "wxnet/error.hpp"
#include "wxnet/nn.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wxnet;
using namespace wxnet::testing;

namespace {

double sig(double v) { return 1.0 / (1.0 + std::exp(-v)); }

ModelParams scalar_mlp() {
  ModelParams p = zero_params(ArchSpec::mlp(1, 1, 1));
  auto &m = std::get<MlpParams>(p.layers);
  m.w_hidden = Matrix{{1}};
  m.b_hidden = Matrix{{0}};
  m.w_out = Matrix{{2}};
  m.b_out = Matrix{{1}};
  return p;
}

} // namespace

TEST(Activations, Relu) {
  EXPECT_EQ(relu(Matrix{{-1, 0, 2}}), (Matrix{{0, 0, 2}}));
  EXPECT_EQ(relu(Matrix{{0}}), (Matrix{{0}}));
  EXPECT_EQ(relu(Matrix{{-5.5}}), (Matrix{{0}}));
}

TEST(Activations, Sigmoid) {
  EXPECT_EQ(sigmoid(Matrix{{0}})(0, 0), 0.5);
  EXPECT_NEAR(sigmoid(Matrix{{50}})(0, 0), 1.0, 1e-15);
  // 1 / (1 + e^-1)
  EXPECT_NEAR(sigmoid(Matrix{{1}})(0, 0), 0.7310585786300049, 1e-15);
}

TEST(Activations, ReluIdempotentSigmoidSymmetric) {
  Rng rng(4);
  const Matrix x = random_matrix(5, 9, rng, 10.0);
  EXPECT_EQ(relu(relu(x)), relu(x));
  for (int i = -300; i <= 300; ++i) {
    const double v = i / 10.0;
    EXPECT_NEAR(sigmoid(Matrix{{v}})(0, 0) + sigmoid(Matrix{{-v}})(0, 0), 1.0,
                1e-12);
  }
}

TEST(InitParams, DeterministicWithZeroBiases) {
  for (auto arch : {ArchSpec::mlp(8), ArchSpec::rnn(8),
                    ArchSpec::lstm(8, LstmVariant::Standard)}) {
    const auto a = init_params(arch, 99), b = init_params(arch, 99);
    EXPECT_TRUE(a == b);
    EXPECT_FALSE(a == init_params(arch, 100));
    for (const auto &[name, m] : named_tensors(a))
      if (name.ends_with(".bias"))
        for (double v : m->data())
          EXPECT_EQ(v, 0.0) << name;
  }
}

TEST(InitParams, WeightsHaveVarianceOneHundredth) {
  const auto p = init_params(ArchSpec::mlp(5000, 20, 1), 2024);
  std::vector<double> w;
  for (const auto &[name, m] : named_tensors(p))
    if (!name.ends_with(".bias"))
      w.insert(w.end(), m->data().begin(), m->data().end());
  ASSERT_GE(w.size(), 100000u);
  double s = 0, s2 = 0;
  for (double v : w)
    s += v;
  const double mean = s / double(w.size());
  for (double v : w)
    s2 += (v - mean) * (v - mean);
  const double var = s2 / double(w.size());
  EXPECT_LE(std::abs(mean), 3.0 * 0.1 / std::sqrt(double(w.size())));
  EXPECT_NEAR(var, 0.01, 0.05 * 0.01);
}

TEST(MlpForward, ZeroParamsGiveZeros) {
  const auto p = zero_params(ArchSpec::mlp(4, 3, 2));
  Rng rng(1);
  const auto y = predict(p, random_matrix(5, 3, rng));
  for (double v : y.data())
    EXPECT_EQ(v, 0.0);
}

TEST(MlpForward, ScalarHandEvaluation) {
  const auto p = scalar_mlp();
  EXPECT_EQ(predict(p, Matrix{{3}}), (Matrix{{7}}));  // 2 * relu(3) + 1
  EXPECT_EQ(predict(p, Matrix{{-3}}), (Matrix{{1}})); // relu kills -3
  EXPECT_THROW(predict(p, Matrix{{1, 2}}), ShapeError);
}

TEST(MlpForward, HomogeneousInOutputLayer) {
  Rng rng(8);
  auto p = random_params(ArchSpec::mlp(6, 4, 3), rng);
  const Matrix x = random_matrix(5, 4, rng);
  const Matrix y = predict(p, x);
  auto &m = std::get<MlpParams>(p.layers);
  m.w_out = scale(m.w_out, 2.0);
  m.b_out = scale(m.b_out, 2.0);
  const Matrix y2 = predict(p, x);
  for (std::size_t i = 0; i < y.size(); ++i)
    EXPECT_NEAR(y2.data()[i], 2.0 * y.data()[i], 1e-12);
}

TEST(RnnForward, ZeroParamsGiveZeros) {
  const auto p = zero_params(ArchSpec::rnn(4));
  Rng rng(1);
  const Matrix y = predict(p, random_matrix(3, 21, rng));
  for (double v : y.data())
    EXPECT_EQ(v, 0.0);
}

TEST(RnnForward, SingleStepScalar) {
  RnnParams p{Matrix{{1}}, Matrix{{0}}, Matrix{{0}}, Matrix{{1}}, Matrix{{0}}};
  const auto y = rnn_forward(p, {Matrix{{0.5}}}).output;
  EXPECT_DOUBLE_EQ(y(0, 0), std::tanh(0.5));
}

TEST(RnnForward, TwoStepScalarUnroll) {
  const double w1 = 0.8, w2 = -0.5, b = 0.1, wo = 1.5, bo = -0.2;
  const double x1 = 0.3, x2 = -0.7;
  RnnParams p{Matrix{{w1}}, Matrix{{w2}}, Matrix{{b}}, Matrix{{wo}},
              Matrix{{bo}}};
  const double h1 = std::tanh(w1 * x1 + w2 * 0.0 + b);
  const double h2 = std::tanh(w1 * x2 + w2 * h1 + b);
  const auto y = rnn_forward(p, {Matrix{{x1}}, Matrix{{x2}}}).output;
  EXPECT_NEAR(y(0, 0), wo * h2 + bo, 1e-15);
}

TEST(LstmForward, ZeroParamsForceZeroState) {
  for (auto variant : {LstmVariant::PaperExact, LstmVariant::Standard}) {
    const auto p = zero_params(ArchSpec::lstm(3, variant, 2, 1, 2));
    const auto f =
      lstm_forward(std::get<LstmParams>(p.layers), {Matrix{{0.4, -1.0}}});
    const auto &s = f.cache.steps[0];
    for (double v : s.forget.data())
      EXPECT_EQ(v, 0.5);
    for (double v : s.input.data())
      EXPECT_EQ(v, 0.5);
    for (double v : s.output.data())
      EXPECT_EQ(v, 0.5);
    for (double v : s.cell.data())
      EXPECT_EQ(v, 0.0);
    for (double v : f.output.data())
      EXPECT_EQ(v, 0.0);
  }
}

TEST(LstmForward, SingleStepScalarHandEvaluation) {
  const double x = 0.7, h0 = -0.4, c0 = 0.9;
  GateParams f{Matrix{{0.5}}, Matrix{{-0.3}}, Matrix{{0.1}}};
  GateParams i{Matrix{{-0.2}}, Matrix{{0.6}}, Matrix{{0.05}}};
  GateParams o{Matrix{{1.1}}, Matrix{{0.2}}, Matrix{{-0.3}}};
  GateParams c{Matrix{{0.4}}, Matrix{{-0.9}}, Matrix{{0.2}}};
  const double wy = 1.3, by = 0.25;

  const double fg = sig(0.5 * x - 0.3 * h0 + 0.1);
  const double ig = sig(-0.2 * x + 0.6 * h0 + 0.05);
  const double og = sig(1.1 * x + 0.2 * h0 - 0.3);

  // PaperExact form: candidate is tanh(h_{t-1}).
  {
    LstmParams p{f, i, o, std::nullopt, Matrix{{wy}}, Matrix{{by}}};
    const double cell = fg * c0 + ig * std::tanh(h0);
    const double h = og * std::tanh(cell);
    const auto y =
      lstm_forward(p, {Matrix{{x}}}, {Matrix{{h0}}, Matrix{{c0}}}).output;
    EXPECT_NEAR(y(0, 0), wy * h + by, 1e-15);
  }
  // Standard form: candidate has its own weights and sees x_t.
  {
    LstmParams p{f, i, o, c, Matrix{{wy}}, Matrix{{by}}};
    const double g = std::tanh(0.4 * x - 0.9 * h0 + 0.2);
    const double cell = fg * c0 + ig * g;
    const double h = og * std::tanh(cell);
    const auto y =
      lstm_forward(p, {Matrix{{x}}}, {Matrix{{h0}}, Matrix{{c0}}}).output;
    EXPECT_NEAR(y(0, 0), wy * h + by, 1e-15);
  }
}

TEST(LstmForward, PaperExactFromZeroStateIgnoresInput) {
  Rng rng(21);
  const auto p = random_params(ArchSpec::lstm(5, LstmVariant::PaperExact), rng);
  const auto &head = std::get<LstmParams>(p.layers).b_out;
  const Matrix y = predict(p, random_matrix(4, 21, rng));
  for (std::size_t r = 0; r < y.rows(); ++r)
    for (std::size_t c = 0; c < y.cols(); ++c)
      EXPECT_EQ(y(r, c), head(0, c));
}

TEST(LstmForward, VariantsDiffer) {
  Rng rng(22);
  const auto std_params =
    random_params(ArchSpec::lstm(5, LstmVariant::Standard), rng);
  ModelParams paper = zero_params(ArchSpec::lstm(5, LstmVariant::PaperExact));
  auto &dst = std::get<LstmParams>(paper.layers);
  const auto &src = std::get<LstmParams>(std_params.layers);
  dst.forget = src.forget;
  dst.input = src.input;
  dst.output = src.output;
  dst.w_out = src.w_out;
  dst.b_out = src.b_out;
  const Matrix x = random_matrix(6, 21, rng);
  EXPECT_NE(predict(paper, x), predict(std_params, x));
}

TEST(RecurrentForward, SingleStepWithoutRecurrenceIsDenseLayer) {
  Rng rng(30);
  const Matrix x = random_matrix(4, 3, rng);
  {
    auto p = random_params(ArchSpec::rnn(5, 3, 1, 2), rng);
    auto &r = std::get<RnnParams>(p.layers);
    r.w_recurrent = Matrix(5, 5);
    Matrix hidden = naive_matmul(x, r.w_input);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        hidden(i, j) = std::tanh(hidden(i, j) + r.b_hidden(0, j));
    Matrix want = naive_matmul(hidden, r.w_out);
    const Matrix got = predict(p, x);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        EXPECT_NEAR(got(i, j), want(i, j) + r.b_out(0, j), 1e-12);
  }
  {
    auto p = random_params(ArchSpec::lstm(5, LstmVariant::Standard, 3, 1, 2),
                           rng);
    auto &l = std::get<LstmParams>(p.layers);
    for (GateParams *g : {&l.forget, &l.input, &l.output, &*l.candidate})
      g->w_recurrent = Matrix(5, 5);
    auto pre = [&](const GateParams &g, std::size_t i, std::size_t j) {
      return naive_matmul(x, g.w_input)(i, j) + g.bias(0, j);
    };
    Matrix hidden(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        const double cell =
          sig(pre(l.input, i, j)) * std::tanh(pre(*l.candidate, i, j));
        hidden(i, j) = sig(pre(l.output, i, j)) * std::tanh(cell);
      }
    Matrix want = naive_matmul(hidden, l.w_out);
    const Matrix got = predict(p, x);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        EXPECT_NEAR(got(i, j), want(i, j) + l.b_out(0, j), 1e-12);
  }
}

TEST(Forward, PureAndRepeatable) {
  Rng rng(31);
  for (auto arch : {ArchSpec::mlp(6), ArchSpec::rnn(6),
                    ArchSpec::lstm(6, LstmVariant::Standard)}) {
    const auto p = random_params(arch, rng);
    const Matrix x = random_matrix(7, 21, rng);
    EXPECT_EQ(predict(p, x), predict(p, x));
  }
}

TEST(ToSequence, SplitsRecordMajor) {
  const Matrix x{{1, 2, 3, 4, 5, 6}};
  const auto seq = to_sequence(x, 3);
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_EQ(seq[0], (Matrix{{1, 2}}));
  EXPECT_EQ(seq[2], (Matrix{{5, 6}}));
  EXPECT_THROW(to_sequence(x, 4), ShapeError);
}

TEST(ArchSpec, ValidatesAndParses) {
  EXPECT_THROW(ArchSpec::mlp(0).validate(), ConfigError);
  ArchSpec bad = ArchSpec::mlp(4);
  bad.seq_len = 3;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_EQ(parse_model_kind("lstm"), ModelKind::Lstm);
  EXPECT_EQ(parse_lstm_variant("standard"), LstmVariant::Standard);
  EXPECT_THROW(parse_model_kind("gru"), ConfigError);
  EXPECT_EQ(ArchSpec::rnn(8).feature_dim(), 21u);
}
