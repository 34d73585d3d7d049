// SPDX-License-Identifier: Apache-2.0
/**
 * @file   synth.hpp
 * @brief  Seeded synthetic station data.
 *
 * Each channel is a sum of annual and diurnal sinusoids, a slowly wandering
 * AR(1) component, and white noise. Radiation follows a clipped daylight arc
 * and is exactly 0 at night; rainfall comes in sparse non-negative bursts.
 * Every record satisfies the station range checks.
 */
#pragma once

#include "wxnet/series.hpp"

#include <chrono>
#include <cstdint>

namespace wxnet {

struct SynthOptions {
  std::size_t days = 1;
  std::uint64_t seed = 0;
  Timestamp start{2022, 1, 1, 0, 0};
  std::chrono::minutes cadence{10};
  /// Multiplies every stochastic component except rain; 0 gives pure
  /// sinusoids (plus rain).
  double noise = 1.0;
};

/// days * 1440 / cadence records. Throws ConfigError for days == 0 or a
/// cadence that does not divide a day.
Series synth_weather(const SynthOptions &opts);

} // namespace wxnet
