#ifndef RSE_RNG_HPP
#define RSE_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace rse {

/// Name recorded in simulation output metadata.
inline constexpr const char* kRngFamily = "philox4x64-10";

/// Philox4x64-10 counter-based generator (numpy-compatible constants and
/// round order). Output block i is a pure function of (key, i), so streams
/// with distinct keys are independent: Monte Carlo run j draws from
/// key = {master seed, j} with the counter starting at zero.
class Philox4x64 {
 public:
  Philox4x64(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

  std::uint64_t next_u64() {
    if (index_ == 4) generate_block();
    return buffer_[index_++];
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; u1 is kept in (0, 1] so the log is finite.
  double next_gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
  }

  void generate_block() {
    std::array<std::uint64_t, 4> c = counter_;
    std::array<std::uint64_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      std::uint64_t hi0, lo0, hi1, lo1;
      mulhilo(kMul0, c[0], hi0, lo0);
      mulhilo(kMul1, c[2], hi1, lo1);
      c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    buffer_ = c;
    if (++counter_[0] == 0)
      if (++counter_[1] == 0)
        if (++counter_[2] == 0) ++counter_[3];
    index_ = 0;
  }

  std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> buffer_{};
  int index_ = 4;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace rse

#endif  // RSE_RNG_HPP
