// SPDX-License-Identifier: Apache-2.0
/**
 * @file   model_io.hpp
 * @brief  JSON model files: architecture, every parameter matrix as
 *         (name, rows, cols, row-major data), and optionally the scaler the
 *         model was trained with. Floats are written in shortest round-trip
 *         form, so save/load is bit-exact.
 */
#pragma once

#include "wxnet/nn.hpp"
#include "wxnet/scaler.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace wxnet {

struct ModelBundle {
  ModelParams params;
  std::optional<MinMaxScaler> scaler;
};

std::string model_to_json(const ModelParams &params,
                          const MinMaxScaler *scaler = nullptr);
/// Throws ParseError on malformed documents or shapes that do not match the
/// stored architecture.
ModelBundle model_from_json(const std::string &text);

void save_model(const std::filesystem::path &path, const ModelParams &params,
                const MinMaxScaler *scaler = nullptr);
ModelBundle load_model(const std::filesystem::path &path);

} // namespace wxnet
