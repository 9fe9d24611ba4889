#pragma once

// Reproducible random streams.
//
// Every random draw in the library comes from a stream derived from a single
// master seed, a stream name ("rrset", "tournament", ...) and an index. The
// derivation does not depend on thread count or scheduling, so a computation
// that partitions its work by index is reproducible at any parallelism.

#include <cstdint>
#include <random>
#include <string_view>

#include "cim/common.hpp"

namespace cim {

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t master_seed, std::string_view name,
                       std::uint64_t index = 0) {
  const std::uint64_t tag = fnv1a(name);
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(tag),
                    static_cast<std::uint32_t>(tag >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

// True with probability p. p >= 1 always succeeds, p <= 0 never does.
inline bool coin(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

// Number of worker threads used by parallel sections. 0 means the OpenMP
// default.
void set_thread_count(int threads);
int thread_count();

}  // namespace cim
