#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace majorcat {

/// Counter-based random stream (Philox4x32-10) keyed by a master seed and a
/// stream id. The output sequence is a pure function of (master_seed,
/// stream_id), so per-trial streams give identical draws regardless of how
/// trials are scheduled across workers.
class SeededStream {
 public:
  SeededStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id) {}

  /// Stream for trial `trial_index` of a sweep at dimension `dim`.
  static SeededStream for_trial(std::uint64_t master_seed, std::uint32_t dim, std::uint32_t trial_index) {
    return SeededStream(master_seed, (std::uint64_t{dim} << 32) | trial_index);
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint32_t next_u32() {
    if (used_ == 4) refill();
    return block_[used_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the second variate of each pair is kept.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Raw Philox4x32-10 block function.
  static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint64_t kM0 = 0xD2511F53u;
    constexpr std::uint64_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = kM0 * ctr[0];
      const std::uint64_t p1 = kM1 * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }

 private:
  void refill() {
    block_ = philox({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                     static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)},
                    {static_cast<std::uint32_t>(master_seed_), static_cast<std::uint32_t>(master_seed_ >> 32)});
    ++counter_;
    used_ = 0;
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace majorcat
