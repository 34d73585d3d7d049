// SPDX-License-Identifier: Apache-2.0
/**
 * @file   evaluate.hpp
 * @brief  Test-set evaluation and plot-data emission.
 *
 * Predictors map normalized features to normalized forecasts. Aggregate
 * MSE/MAE/RMSE are computed in normalized space by default (or in physical
 * units on request); per-channel correlation and R^2 always use normalized
 * space.
 */
#pragma once

#include "wxnet/nn.hpp"
#include "wxnet/scaler.hpp"
#include "wxnet/window.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wxnet {

enum class MetricSpace { Normalized, Physical };
std::string_view to_string(MetricSpace space);
MetricSpace parse_metric_space(std::string_view text);

using Predictor = std::function<Matrix(const Matrix &features)>;

Predictor model_predictor(const ModelParams &params);
/// Repeats the newest observation in the window (the last `channels`
/// feature columns).
Predictor persistence_predictor(std::size_t channels = 7);

struct VariableMetrics {
  std::string name;
  std::optional<double> rho; // nullopt: undefined (constant series)
  std::optional<double> r2;
};

struct MetricsReport {
  std::string model;
  MetricSpace space = MetricSpace::Normalized;
  std::size_t n = 0;
  double mse = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  std::vector<VariableMetrics> per_variable;

  const VariableMetrics &variable(std::string_view name) const;
};

/// `test` is in physical units; it is normalized with `scaler` before the
/// predictor sees it.
MetricsReport evaluate(const Predictor &predictor, const MinMaxScaler &scaler,
                       const WindowedSet &test, std::string model_id,
                       MetricSpace space = MetricSpace::Normalized);

/// Metrics for forecasts that are already computed; both matrices in the
/// same (normalized) space.
MetricsReport report_from_predictions(const Matrix &y, const Matrix &y_hat,
                                      const std::vector<std::string> &names,
                                      std::string model_id);

/// Fixed keys: schema_version, model, n, space, mse, mae, rmse,
/// per_variable.<name>.rho / .r2 (null when undefined).
std::string report_to_json(const MetricsReport &report);
/// {"schema_version": 1, "reports": {"<key>": <report>, ...}} in the given
/// order.
std::string reports_to_json(
  const std::vector<std::pair<std::string, MetricsReport>> &reports);

/// Writes <name>_series.csv (index,timestamp,observed,predicted) and
/// <name>_scatter.csv (observed,predicted,identity) for every channel, in
/// physical units. Returns the paths written. Throws IoError with the path.
std::vector<std::filesystem::path>
emit_plot_data(const Predictor &predictor, const MinMaxScaler &scaler,
               const WindowedSet &test, const std::filesystem::path &dir);

} // namespace wxnet
