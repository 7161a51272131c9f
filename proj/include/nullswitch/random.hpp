#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace nullswitch {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Maps a 128-bit counter and 64-bit key to 128 bits.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53U;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57U;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9U;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85U;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

/// What a substream is used for. Values are part of the reproducibility
/// contract: changing them changes every simulated result.
enum class DrawKind : std::uint32_t {
  payload = 1,    // data bits
  candidate = 2,  // random-candidate transmit choice
  noise = 0x100,  // channel noise; add the SNR point index
};

/// Deterministic random substream addressed by (seed, symbol, kind).
///
/// Counter layout: word 0 = block number within the substream, word 1 =
/// kind, words 2-3 = symbol index. The key is the 64-bit master seed. Any
/// two distinct addresses give independent streams, so Monte-Carlo shards
/// reproduce the same draws whatever the thread count.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t symbol, std::uint32_t kind) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        symbol_(symbol),
        kind_(kind) {}

  RandomStream(std::uint64_t seed, std::uint64_t symbol, DrawKind kind, std::uint32_t sub = 0) noexcept
      : RandomStream(seed, symbol, static_cast<std::uint32_t>(kind) + sub) {}

  std::uint32_t next_u32() noexcept {
    if (used_ == 4) refill();
    return block_[used_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound), unbiased (rejection).
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= limit) return r % bound;
    }
  }

  /// Standard normal via Box-Muller; values come in pairs.
  double normal() noexcept {
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

  std::uint8_t bit() noexcept {
    if (bits_left_ == 0) {
      bit_pool_ = next_u32();
      bits_left_ = 32;
    }
    --bits_left_;
    return static_cast<std::uint8_t>((bit_pool_ >> bits_left_) & 1U);
  }

 private:
  void refill() noexcept {
    block_ = philox4x32_10({block_index_, kind_, static_cast<std::uint32_t>(symbol_),
                            static_cast<std::uint32_t>(symbol_ >> 32)},
                           key_);
    ++block_index_;
    used_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t symbol_;
  std::uint32_t kind_;
  std::uint32_t block_index_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
  std::uint32_t bit_pool_ = 0;
  int bits_left_ = 0;
};

}  // namespace nullswitch
