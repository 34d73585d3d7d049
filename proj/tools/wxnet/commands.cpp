// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include "wxnet/error.hpp"
#include "wxnet/model_io.hpp"
#include "wxnet/scaler.hpp"
#include "wxnet/select.hpp"
#include "wxnet/synth.hpp"
#include "wxnet/text_format.hpp"
#include "wxnet/train.hpp"
#include "wxnet/weather_csv.hpp"
#include "wxnet/window.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace wxnet::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kWidth = 3;
/// Station cadence; windows never bridge a longer gap.
constexpr std::chrono::minutes kMaxGap{10};

void warn(const std::vector<std::string> &warnings, const std::string &what) {
  for (const auto &w : warnings)
    std::cerr << "warning: " << what << ": " << w << '\n';
}

Series read_series(const std::string &path, bool strict) {
  auto parsed = parse_csv_file(path, ParseOptions{strict});
  warn(parsed.warnings, path);
  return std::move(parsed.series);
}

WindowedSet read_windows(const std::string &path, bool strict) {
  return window_blocks(read_series(path, strict), kWidth, kMaxGap);
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

void make_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create directory '" + dir.string() +
                  "': " + ec.message());
}

TrainConfig train_config(const ModelArgs &m) {
  TrainConfig cfg;
  cfg.learning_rate = m.lr;
  cfg.batch_size = m.batch;
  cfg.epochs = m.epochs;
  cfg.seed = m.seed;
  cfg.shuffle = !m.no_shuffle;
  return cfg;
}

MinMaxScaler bundled_scaler(const ModelBundle &bundle,
                            const std::string &path) {
  if (!bundle.scaler)
    throw ConfigError("model file '" + path + "' carries no scaler");
  return *bundle.scaler;
}

} // namespace

ArchSpec arch_for(const ModelArgs &m) {
  const ModelKind kind = parse_model_kind(m.model);
  const LstmVariant variant = parse_lstm_variant(m.lstm_variant);
  switch (kind) {
  case ModelKind::Mlp:
    return ArchSpec::mlp(m.hidden, kWidth * kChannels, kChannels);
  case ModelKind::SimpleRnn:
    return ArchSpec::rnn(m.hidden, kChannels, kWidth, kChannels);
  case ModelKind::Lstm:
    return ArchSpec::lstm(m.hidden, variant, kChannels, kWidth, kChannels);
  }
  throw ConfigError("unknown model kind");
}

void run_synth(const SynthArgs &a) {
  SynthOptions o;
  o.days = a.days;
  o.seed = a.seed;
  o.noise = a.noise;
  const auto start = Timestamp::parse(a.start);
  if (!start)
    throw ConfigError("bad --start '" + a.start + "', expected YY/MM/DD H:MM");
  o.start = *start;
  write_csv_file(a.out, synth_weather(o));
}

void run_prep(const PrepArgs &a) {
  const Series full = read_series(a.in, a.strict);
  SplitRule rule;
  rule.train_years = a.train_years;
  rule.test_years = a.test_years;
  if (a.fallback == "train")
    rule.fallback = SplitRule::Fallback::Train;
  else if (a.fallback == "test")
    rule.fallback = SplitRule::Fallback::Test;
  const auto split = split_train_test(full, rule);
  warn(split.warnings, a.in);
  write_csv_file(a.train_out, split.train);
  write_csv_file(a.test_out, split.test);
  std::cout << "train: " << split.train.size()
            << " records, test: " << split.test.size() << " records\n";
}

void run_train(const TrainArgs &a) {
  const ArchSpec arch = arch_for(a.m);
  const WindowedSet raw = read_windows(a.train, a.strict);
  const MinMaxScaler scaler = fit_scaler(raw);
  const WindowedSet train = scaler.transform(raw);
  std::optional<WindowedSet> val;
  if (!a.val.empty())
    val = scaler.transform(read_windows(a.val, a.strict));

  TrainConfig cfg = train_config(a.m);
  if (a.patience > 0)
    cfg.early_stop_patience = a.patience;
  const auto result = fit(arch, cfg, train, val ? &*val : nullptr);
  save_model(a.out_model, result.params, &scaler);
  if (!a.log.empty())
    write_epoch_log_csv(fs::path(a.log), result.log);
  if (!result.log.empty())
    std::cout << "epochs: " << result.log.size() << ", final train loss: "
              << format_double(result.log.back().train_loss) << '\n';
}

void run_cv(const CvArgs &a) {
  const ArchSpec arch = arch_for(a.m);
  const Grid grid = a.grid.empty() ? Grid::desk() : load_grid_file(a.grid);
  const WindowedSet train = read_windows(a.train, a.strict);
  CvOptions opts;
  opts.k = a.k;
  opts.seed = a.m.seed;
  opts.per_fold_scaler = a.per_fold_scaler;
  opts.threads = a.threads;
  const auto result = grid_search(arch, grid, train, train_config(a.m), opts);
  write_text(a.out, cv_result_to_json(result));
  if (!a.heatmap.empty()) {
    std::ofstream out(a.heatmap, std::ios::binary);
    if (!out)
      throw IoError("cannot open '" + a.heatmap + "' for writing");
    write_cv_heatmap_csv(out, result);
  }
  const auto &best = result.best();
  std::cout << "chosen: lr " << format_double(best.learning_rate)
            << ", hidden " << best.hidden << ", mean validation loss "
            << format_double(best.mean_loss) << '\n';
}

void run_evaluate(const EvaluateArgs &a) {
  const ModelBundle bundle = load_model(a.model_file);
  const MinMaxScaler scaler = bundled_scaler(bundle, a.model_file);
  const WindowedSet test = read_windows(a.test, a.strict);
  const auto predictor = model_predictor(bundle.params);
  const auto report =
    evaluate(predictor, scaler, test, std::string(to_string(bundle.params.arch.kind)),
             parse_metric_space(a.space));
  write_text(a.out_report, report_to_json(report));
  if (!a.plots.empty()) {
    make_dir(a.plots);
    emit_plot_data(predictor, scaler, test, a.plots);
  }
}

void run_predict(const PredictArgs &a) {
  const ModelBundle bundle = load_model(a.model_file);
  const MinMaxScaler scaler = bundled_scaler(bundle, a.model_file);
  const Series s = read_series(a.window, false);
  if (s.size() < kWidth)
    throw SizeError("predict: '" + a.window + "' holds " +
                    std::to_string(s.size()) + " records, need " +
                    std::to_string(kWidth));
  Matrix features(1, kWidth * kChannels);
  for (std::size_t j = 0; j < kWidth; ++j) {
    const auto &r = s.records[s.size() - kWidth + j];
    for (std::size_t c = 0; c < kChannels; ++c)
      features(0, j * kChannels + c) = r.values[c];
  }
  const Matrix forecast = scaler.inverse_transform(
    predict(bundle.params, scaler.transform(features)));

  const auto &last = s.records.back().time;
  const auto step = last.to_sys() - s.records[s.size() - 2].time.to_sys();
  ordered_json values = ordered_json::object();
  for (std::size_t c = 0; c < kChannels; ++c)
    values[std::string(kChannelNames[c])] = forecast(0, c);
  ordered_json j = {{"schema_version", 1},
                    {"model", std::string(to_string(bundle.params.arch.kind))},
                    {"time", last.plus(step).iso()},
                    {"forecast", values}};
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text(a.out, text);
}

void run_compare(const CompareArgs &a) {
  const WindowedSet raw_train = read_windows(a.train, a.strict);
  const WindowedSet raw_test = read_windows(a.test, a.strict);
  const MinMaxScaler scaler = fit_scaler(raw_train);
  const WindowedSet train = scaler.transform(raw_train);
  const MetricSpace space = parse_metric_space(a.space);
  make_dir(a.out);

  constexpr std::array<const char *, 3> kinds = {"mlp", "rnn", "lstm"};
  struct Slot {
    std::optional<FitResult> fit;
    std::optional<MetricsReport> report;
    std::exception_ptr error;
  };
  std::array<Slot, kinds.size()> slots;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < kinds.size();) {
      try {
        ModelArgs m = a.m;
        m.model = kinds[i];
        slots[i].fit = fit(arch_for(m), train_config(m), train);
        slots[i].report = evaluate(model_predictor(slots[i].fit->params),
                                   scaler, raw_test, kinds[i], space);
      } catch (...) {
        slots[i].error = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
    std::clamp<std::size_t>(a.threads == 0 ? std::thread::hardware_concurrency()
                                           : a.threads,
                            1, kinds.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  for (const auto &slot : slots)
    if (slot.error)
      std::rethrow_exception(slot.error);

  std::vector<std::pair<std::string, MetricsReport>> reports;
  std::string table = "model,mse,mae,rmse\n";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const fs::path dir(a.out);
    const std::string kind = kinds[i];
    save_model(dir / (kind + "_model.json"), slots[i].fit->params, &scaler);
    write_epoch_log_csv(dir / (kind + "_log.csv"), slots[i].fit->log);
    const auto &r = *slots[i].report;
    table += kind + "," + format_double(r.mse) + "," + format_double(r.mae) +
             "," + format_double(r.rmse) + "\n";
    reports.emplace_back(kind, r);
  }
  write_text(fs::path(a.out) / "compare.json", reports_to_json(reports));
  write_text(fs::path(a.out) / "compare.csv", table);
  std::cout << table;
}

} // namespace wxnet::cli
