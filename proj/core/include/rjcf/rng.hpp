#pragma once

#include <array>
#include <cstdint>

namespace rjcf {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream keyed by (seed, stream index).
///
/// Block b of stream s under seed k is philox4x32({b_lo, b_hi, s_lo, s_hi},
/// {k_lo, k_hi}), yielding two 64-bit draws. Nothing is shared between
/// streams, so any stream can be reproduced in isolation.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() noexcept;
  /// Standard normal via the Marsaglia polar method.
  double next_normal() noexcept;

  /// Number of 64-bit draws consumed so far.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t draws_ = 0;
  std::uint64_t buffered_ = 0;
  bool has_buffered_ = false;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace rjcf
