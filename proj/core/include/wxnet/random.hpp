// SPDX-License-Identifier: Apache-2.0
/**
 * @file   random.hpp
 * @brief  Portable, fully specified random streams.
 *
 * Every random quantity in wxnet comes from this generator so that runs are
 * reproducible bit-for-bit from a seed, in any language:
 *
 *  - seeding: the four 64-bit state words are four successive outputs of
 *    splitmix64 started at the seed;
 *  - next(): xoshiro256++ (rotl(s0 + s3, 23) + s0, then the usual state step);
 *  - uniform(): (next() >> 11) * 2^-53, a double in [0, 1);
 *  - below(n): high 64 bits of the 128-bit product next() * n;
 *  - normal(): Box-Muller on u1 = 1 - uniform(), u2 = uniform(); the cosine
 *    branch is returned first and the sine branch is cached for the next call.
 *
 * Independent sub-streams are derived with derive_seed(), which folds tags
 * into a seed through splitmix64 so that e.g. (pair, fold) tasks get the same
 * stream regardless of which worker runs them.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace wxnet {

std::uint64_t splitmix64(std::uint64_t &state);

/// Folds each tag into `seed`; order matters.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> tags);

class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal draw.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Fisher-Yates, from the back, using below().
  template <typename T> void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::uint64_t s_[4];
  std::optional<double> spare_;
};

/// 0..n-1, shuffled with a fresh Rng(seed).
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

} // namespace wxnet
