#pragma once

#include <cstdint>
#include <stdexcept>

namespace faultsim {

/// SplitMix64. The state after k calls to next() is seed + k * kGamma, so any
/// future output can be computed directly with at(); the parallel stress
/// kernel relies on this to give every cell its own draw.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Output of the k-th next() call (k >= 1) made from `state`.
  static constexpr std::uint64_t at(std::uint64_t state, std::uint64_t k) {
    return mix(state + k * kGamma);
  }

  // Maps a raw output onto [lo, hi] by modulo reduction.
  static constexpr std::int64_t reduce(std::uint64_t raw, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(raw);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + raw % span);
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("rng range with lo > hi");
    return reduce(next(), lo, hi);
  }

  void discard(std::uint64_t n) { state_ += n * kGamma; }

  std::uint64_t state() const { return state_; }

  friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_;
};

}  // namespace faultsim
