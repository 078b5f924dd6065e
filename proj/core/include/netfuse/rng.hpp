#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace netfuse {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Key of an independent random stream. Streams are addressed by
/// (seed, purpose, node, replication) so parallel generation never
/// perturbs draws: every consumer owns a disjoint counter sequence.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::string_view purpose,
                                   std::uint64_t node = 0,
                                   std::uint64_t replication = 0) {
  std::uint64_t k = mix64(seed + 0x9E3779B97F4A7C15ull);
  k = mix64(k ^ fnv1a(purpose));
  k = mix64(k ^ (node << 32 | (replication & 0xFFFFFFFFull)));
  k = mix64(k ^ (replication >> 32));
  return k;
}

/// Counter-based generator: draw i of a stream is mix64(key + i*gamma).
/// State is just the counter, so draws are reproducible, order-independent
/// across streams, and cheap to fork.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t seed, std::string_view purpose,
             std::uint64_t node = 0, std::uint64_t replication = 0)
      : key_(stream_key(seed, purpose, node, replication)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ull;
    return mix64(key_ ^ counter_);
  }

  /// Uniform on (0, 1]; never returns 0 so log() is safe.
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (uses only libm, no
  /// std::normal_distribution, so draws do not depend on the C++ runtime).
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform integer in [0, bound) by rejection-free multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    // 128-bit multiply keeps the distribution unbiased enough for
    // simulation use (bias < 2^-64 per draw).
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Deterministic child seed, used to derive per-replication and per-retry
/// seeds from a master seed.
constexpr std::uint64_t child_seed(std::uint64_t seed, std::string_view purpose,
                                   std::uint64_t index) {
  return stream_key(seed, purpose, index, 0);
}

}  // namespace netfuse
