#pragma once

#include <cstdint>
#include <string_view>

namespace roadsurfel {

/// Derives an independent substream seed from a master seed and a stream
/// name, so toggling one pipeline stage never perturbs another stage's
/// sampling.
uint64_t derive_seed(uint64_t master_seed, std::string_view stream_name);

/// xoshiro256** with hand-rolled distributions. Every draw is fully
/// specified by the seed (no implementation-defined std::distribution
/// behavior), which keeps datasets and training runs byte-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be > 0.
  uint64_t uniform_int(uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double stddev);

  /// Fisher-Yates shuffle of indices [0, n).
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  uint64_t state_[4];
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace roadsurfel
