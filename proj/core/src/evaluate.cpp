// SPDX-License-Identifier: Apache-2.0
#include "wxnet/evaluate.hpp"

#include "wxnet/error.hpp"
#include "wxnet/metrics.hpp"
#include "wxnet/text_format.hpp"

#include <json.hpp>

#include <fstream>

namespace wxnet {

using nlohmann::ordered_json;

std::string_view to_string(MetricSpace space) {
  return space == MetricSpace::Normalized ? "normalized" : "physical";
}

MetricSpace parse_metric_space(std::string_view text) {
  if (text == "normalized")
    return MetricSpace::Normalized;
  if (text == "physical")
    return MetricSpace::Physical;
  throw ConfigError("unknown metric space '" + std::string(text) + "'");
}

Predictor model_predictor(const ModelParams &params) {
  return [params](const Matrix &features) { return predict(params, features); };
}

Predictor persistence_predictor(std::size_t channels) {
  return [channels](const Matrix &features) {
    if (features.cols() < channels)
      throw ShapeError("persistence: window " + features.shape_string() +
                       " narrower than one observation");
    return slice_cols(features, features.cols() - channels, channels);
  };
}

const VariableMetrics &MetricsReport::variable(std::string_view name) const {
  for (const auto &v : per_variable)
    if (v.name == name)
      return v;
  throw ConfigError("report has no variable '" + std::string(name) + "'");
}

MetricsReport report_from_predictions(const Matrix &y, const Matrix &y_hat,
                                      const std::vector<std::string> &names,
                                      std::string model_id) {
  if (names.size() != y.cols())
    throw ShapeError("report: " + std::to_string(names.size()) +
                     " names for " + std::to_string(y.cols()) + " columns");
  MetricsReport r;
  r.model = std::move(model_id);
  r.n = y.rows();
  r.mse = mse(y, y_hat);
  r.mae = mae(y, y_hat);
  r.rmse = std::sqrt(r.mse);
  for (std::size_t j = 0; j < y.cols(); ++j) {
    VariableMetrics v{names[j], std::nullopt, std::nullopt};
    if (y.rows() >= 2) {
      const auto a = column(y, j), b = column(y_hat, j);
      v.rho = pearson(a, b);
      v.r2 = r_squared(a, b);
    }
    r.per_variable.push_back(std::move(v));
  }
  return r;
}

MetricsReport evaluate(const Predictor &predictor, const MinMaxScaler &scaler,
                       const WindowedSet &test, std::string model_id,
                       MetricSpace space) {
  if (test.size() == 0)
    throw SizeError("evaluate: empty test set");
  const WindowedSet norm = scaler.transform(test);
  const Matrix y_hat = predictor(norm.features);
  if (y_hat.rows() != norm.targets.rows() ||
      y_hat.cols() != norm.targets.cols())
    throw ShapeError("evaluate: predictions " + y_hat.shape_string() +
                     " do not match targets " + norm.targets.shape_string());
  MetricsReport r = report_from_predictions(norm.targets, y_hat,
                                            test.channel_names,
                                            std::move(model_id));
  r.space = space;
  if (space == MetricSpace::Physical) {
    const Matrix phys_hat = scaler.inverse_transform(y_hat);
    r.mse = mse(test.targets, phys_hat);
    r.mae = mae(test.targets, phys_hat);
    r.rmse = std::sqrt(r.mse);
  }
  return r;
}

namespace {

ordered_json opt_json(const std::optional<double> &v) {
  return v && std::isfinite(*v) ? ordered_json(*v) : ordered_json();
}

ordered_json report_json(const MetricsReport &r) {
  ordered_json per = ordered_json::object();
  for (const auto &v : r.per_variable)
    per[v.name] = {{"rho", opt_json(v.rho)}, {"r2", opt_json(v.r2)}};
  return {{"schema_version", 1}, {"model", r.model},
          {"n", r.n},            {"space", std::string(to_string(r.space))},
          {"mse", r.mse},        {"mae", r.mae},
          {"rmse", r.rmse},      {"per_variable", per}};
}

void write_file(const std::filesystem::path &path, const std::string &body) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << body;
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace

std::string report_to_json(const MetricsReport &report) {
  return report_json(report).dump(2) + "\n";
}

std::string reports_to_json(
  const std::vector<std::pair<std::string, MetricsReport>> &reports) {
  ordered_json all = ordered_json::object();
  for (const auto &[key, r] : reports)
    all[key] = report_json(r);
  ordered_json j = {{"schema_version", 1}, {"reports", all}};
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path>
emit_plot_data(const Predictor &predictor, const MinMaxScaler &scaler,
               const WindowedSet &test, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create directory '" + dir.string() +
                  "': " + ec.message());
  const WindowedSet norm = scaler.transform(test);
  const Matrix observed = scaler.inverse_transform(norm.targets);
  const Matrix predicted = scaler.inverse_transform(predictor(norm.features));

  std::vector<std::filesystem::path> written;
  for (std::size_t c = 0; c < test.channels(); ++c) {
    const std::string &name = test.channel_names.at(c);
    std::string series = "index,timestamp,observed,predicted\n";
    std::string scatter = "observed,predicted,identity\n";
    for (std::size_t i = 0; i < test.size(); ++i) {
      const std::string obs = format_double(observed(i, c));
      const std::string pred = format_double(predicted(i, c));
      const std::string when =
        i < test.target_times.size() ? test.target_times[i].iso() : "";
      series += std::to_string(i) + ',' + when + ',' + obs + ',' + pred + '\n';
      scatter += obs + ',' + pred + ',' + obs + '\n';
    }
    const auto series_path = dir / (name + "_series.csv");
    const auto scatter_path = dir / (name + "_scatter.csv");
    write_file(series_path, series);
    write_file(scatter_path, scatter);
    written.push_back(series_path);
    written.push_back(scatter_path);
  }
  return written;
}

} // namespace wxnet
