// SPDX-License-Identifier: Apache-2.0
/**
 * @file   error.hpp
 * @brief  Exception types thrown by wxnet. All derive from wxnet::Error so
 *         callers (the CLI in particular) can catch one type and report.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wxnet {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, e.g. "shape" or "parse".
  virtual const char *kind() const noexcept { return "error"; }
};

/// Operand shapes are incompatible.
class ShapeError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "shape"; }
};

/// Not enough data for the requested operation (window, folds, batches).
class SizeError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "size"; }
};

/// Invalid hyperparameters, grids or options.
class ConfigError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "config"; }
};

/// Malformed input text. line() is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line = 0)
    : Error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}
  const char *kind() const noexcept override { return "parse"; }
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Records are not in strictly increasing time order.
class OrderingError : public ParseError {
public:
  using ParseError::ParseError;
  const char *kind() const noexcept override { return "ordering"; }
};

/// A record's year matches neither split bucket.
class RoutingError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "routing"; }
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
public:
  DivergenceError(std::size_t epoch, std::size_t batch, double loss)
    : Error("training diverged at epoch " + std::to_string(epoch) +
            ", batch " + std::to_string(batch) +
            " (loss=" + std::to_string(loss) + ")"),
      epoch_(epoch), batch_(batch), loss_(loss) {}
  const char *kind() const noexcept override { return "divergence"; }
  std::size_t epoch() const noexcept { return epoch_; }
  std::size_t batch() const noexcept { return batch_; }
  double loss() const noexcept { return loss_; }

private:
  std::size_t epoch_;
  std::size_t batch_;
  double loss_;
};

/// Every grid pair diverged on every fold.
class SelectionError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "selection"; }
};

/// Filesystem failure; message carries the path.
class IoError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "io"; }
};

} // namespace wxnet
