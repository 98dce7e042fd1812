#pragma once

// Seeded generators for cone points and ordered measure pairs. Every draw is
// derived from 64-bit integer arithmetic only, so outputs are bit-identical
// across standard libraries.

#include <cstdint>
#include <random>
#include <utility>

#include "ordcone/measure.hpp"

namespace ordcone {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Independent stream for (seed, index): trials never share a sequence.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(seed) ^ mix64(index + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [lo, hi) with 53 random bits.
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// G G^T + 0.1 I with G uniform(-1, 1) entries.
PDMatrix gen_pd(Rng& rng, std::size_t dim);

/// scale * H H^T with H uniform(-1, 1) entries; PSD, possibly singular.
SymMatrix gen_psd_bump(Rng& rng, std::size_t dim, double scale);

/// Measure with `size` gen_pd points and weights k_i / sum k, k_i in [1, max_ticks].
DiscreteMeasure gen_measure(Rng& rng, std::size_t dim, std::size_t size, std::uint64_t max_ticks = 8);

/// (mu, nu) with shared weights and nu's i-th point = mu's i-th point + a PSD
/// bump of the given scale, so the diagonal coupling witnesses mu <= nu. The
/// order is re-verified with stochastic_leq_flow before returning; a failure
/// throws std::logic_error.
std::pair<DiscreteMeasure, DiscreteMeasure> gen_ordered_pair(Rng& rng, std::size_t dim, std::size_t support_size,
                                                             double bump_scale = 0.5);

}  // namespace ordcone
