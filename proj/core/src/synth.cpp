// SPDX-License-Identifier: Apache-2.0
#include "wxnet/synth.hpp"

#include "wxnet/error.hpp"
#include "wxnet/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wxnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Mean-reverting wander with unit-ish stationary spread times `scale`.
struct Ar1 {
  double phi;
  double scale;
  double value = 0.0;
  double step(Rng &rng) {
    value = phi * value + scale * std::sqrt(1.0 - phi * phi) * rng.normal();
    return value;
  }
};

double day_of_year(const Timestamp &t) {
  using namespace std::chrono;
  const sys_days jan1 = year_month_day{year{t.year}, January, day{1}};
  const auto since = t.to_sys() - jan1;
  return static_cast<double>(since.count()) / 1440.0;
}

} // namespace

Series synth_weather(const SynthOptions &opts) {
  if (opts.days == 0)
    throw ConfigError("synth: days must be at least 1");
  if (opts.cadence.count() <= 0 || 1440 % opts.cadence.count() != 0)
    throw ConfigError("synth: cadence must divide 24 hours");
  const std::size_t per_day = 1440 / static_cast<std::size_t>(opts.cadence.count());
  const double noise = std::max(0.0, opts.noise);

  Rng rng(derive_seed(opts.seed, {0x5eed}));
  Ar1 temp_wander{0.999, 1.5 * noise};
  Ar1 hum_wander{0.998, 6.0 * noise};
  Ar1 wind_wander{0.99, 1.0 * noise};
  Ar1 dir_wander{0.995, 40.0 * noise};
  Ar1 cloud{0.998, 0.3 * noise};
  Ar1 pres_wander{0.9995, 2.0 * noise};
  std::size_t rain_left = 0;
  double rain_rate = 0.0;

  Series out;
  out.records.reserve(opts.days * per_day);
  const auto t0 = opts.start.to_sys();
  for (std::size_t k = 0; k < opts.days * per_day; ++k) {
    const auto now = t0 + opts.cadence * static_cast<long>(k);
    WeatherRecord r;
    r.time = Timestamp::from_sys(now);
    const double doy = day_of_year(r.time);
    const double hour = (r.time.hour * 60 + r.time.minute) / 1440.0;
    const double annual = std::cos(kTwoPi * (doy - 200.0) / 365.25); // +1 mid-July
    const double diurnal = std::sin(kTwoPi * (hour - 8.0 / 24.0));   // peak 14:00
    const double days_elapsed = static_cast<double>(k) / per_day;

    const double temp = 16.0 + 9.0 * annual + 4.0 * diurnal +
                        temp_wander.step(rng) + 0.1 * noise * rng.normal();
    const double hum = 72.0 + 8.0 * annual - 14.0 * diurnal +
                       hum_wander.step(rng) + 1.0 * noise * rng.normal();
    const double wind = 3.0 + 1.2 * std::sin(kTwoPi * (hour - 9.0 / 24.0)) +
                        wind_wander.step(rng) + 0.4 * noise * rng.normal();
    double dir = 220.0 + 70.0 * std::sin(kTwoPi * (hour - 6.0 / 24.0)) +
                 dir_wander.step(rng) + 15.0 * noise * rng.normal();
    dir = std::fmod(dir, 360.0);
    if (dir < 0.0)
      dir += 360.0;
    if (dir >= 360.0)
      dir = 0.0;

    const double elevation = std::sin(kTwoPi * (hour - 6.0 / 24.0));
    const double cover = std::clamp(0.3 + cloud.step(rng), 0.0, 1.0);
    double rad = 0.0;
    if (elevation > 0.0)
      rad = std::max(0.0, (700.0 + 150.0 * annual) * elevation *
                            (1.0 - 0.6 * cover) +
                            10.0 * noise * rng.normal());
    else
      rng.normal(); // keep the draw count independent of the time of day

    // Rain: a burst starts with small probability and lasts 3-30 steps.
    const double start_draw = rng.uniform();
    const double burst_len = static_cast<double>(rng.below(28));
    const double amount = -std::log(1.0 - rng.uniform());
    if (rain_left == 0 && start_draw < 0.003) {
      rain_left = 3 + static_cast<std::size_t>(burst_len);
      rain_rate = 0.2 + 0.8 * amount;
    }
    double rain = 0.0;
    if (rain_left > 0) {
      rain = rain_rate * (0.5 + 0.5 * amount);
      --rain_left;
    }

    const double pres = 1013.0 + 5.0 * std::sin(kTwoPi * days_elapsed / 5.3) +
                        0.8 * std::sin(2.0 * kTwoPi * hour) +
                        pres_wander.step(rng) + 0.05 * noise * rng.normal();

    r.values = {temp,
                std::clamp(hum, 0.0, 100.0),
                std::max(0.0, wind),
                dir,
                rad,
                rain,
                pres};
    out.records.push_back(r);
  }
  return out;
}

} // namespace wxnet
