#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace svr {

/// Deterministic random source. All draws are derived from raw 64-bit engine
/// output with fixed arithmetic, so a given seed produces the same sequence
/// on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Derives a stream-specific seed from a global seed and a string key
/// (FNV-1a over the seed bytes, the stream tag, and the key). Used to give
/// every utterance/trial its own reproducible stream regardless of worker
/// count or processing order.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stream,
                          std::string_view key);

}  // namespace svr
