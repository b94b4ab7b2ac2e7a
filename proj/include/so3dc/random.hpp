// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace so3dc {

//! SplitMix64 finalizer, used to derive independent sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/*!
 * Explicit random stream passed to every stochastic operation.
 *
 * Wraps a 64-bit Mersenne twister. Sub-streams are derived from a master seed
 * and an index so that blocks of work can be generated independently and
 * reproducibly.
 */
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed);

    //! Deterministic child stream for (seed, index).
    static RandomStream substream(std::uint64_t seed, std::uint64_t index);

    //! Uniform double on [0, 1) with 53 random bits.
    double uniform();
    //! Uniform double on (0, 1].
    double uniform_open0() { return 1.0 - uniform(); }
    double normal();

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace so3dc
