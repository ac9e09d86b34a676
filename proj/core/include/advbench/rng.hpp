#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

namespace advbench {

// Counter-based deterministic randomness. Every random quantity in the
// project is a pure function of a 64-bit key and a 64-bit counter, so
// outputs never depend on traversal order, thread count, or platform
// RNG library details.

/// SplitMix64 finalizer. Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Value of stream `key` at position `counter`: mix64(mix64(key) ^ mix64(counter)).
constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix64(mix64(key) ^ mix64(counter));
}

/// Named subkey: FNV-1a of the tag folded into the parent key.
constexpr std::uint64_t derive_key(std::uint64_t key, std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return counter_hash(key, h);
}

/// Map 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Standard normal draw `index` of stream `key` (Box-Muller, cosine branch).
/// Draw i consumes counters 2i and 2i+1; u1 is shifted into (0, 1] so the
/// logarithm is always finite.
inline double normal_at(std::uint64_t key, std::uint64_t index) {
  const double u1 =
      static_cast<double>((counter_hash(key, 2 * index) >> 11) + 1) * 0x1.0p-53;
  const double u2 = unit_double(counter_hash(key, 2 * index + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Sequential view of a counter stream, for code that wants draw-after-draw
/// semantics (shuffles, parameter jitter). Still fully determined by the key.
class SeqRng {
 public:
  explicit SeqRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next() noexcept { return counter_hash(key_, counter_++); }

  /// Uniform double in [0, 1).
  double unit() noexcept { return unit_double(next()); }

  /// Uniform double in [lo, hi).
  double range(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [lo, hi], inclusive. Modulo mapping; the bias is
  /// below 2^-50 for the spans used here.
  std::int64_t range_int(std::int64_t lo, std::int64_t hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  /// Standard normal, Box-Muller cosine branch over two sequential draws.
  double normal() noexcept {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    const double u2 = unit_double(next());
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(range_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace advbench
