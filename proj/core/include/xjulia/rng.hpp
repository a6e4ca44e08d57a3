#pragma once

#include <cstdint>

namespace xjulia {

__extension__ typedef unsigned __int128 uint128;

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based stream: the i-th draw depends only on (key, i).
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}

  constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter + 0x632BE59BD9B4E019ull));
  }
  std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n) by multiply-shift.
  std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>((static_cast<uint128>(next()) * n) >> 64);
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Key of an independent sub-stream (worker, restart, ...).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream * 0xD1B54A32D192ED03ull + 1));
}

}  // namespace xjulia
