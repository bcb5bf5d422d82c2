#ifndef INSCOM_RANDOM_H_
#define INSCOM_RANDOM_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace inscom {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (key, counter), so any stream position can be generated
// independently.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(Key key) : key_(key) {}
  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter counter) const;

 private:
  Key key_;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// FNV-1a over the bytes of `s`.
std::uint64_t HashString(std::string_view s);

// Order-sensitive combination of 64-bit words into one seed.
std::uint64_t CombineSeed(std::initializer_list<std::uint64_t> parts);

// Uniform double in (0, 1] from the top 53 bits of `bits`.
double ToUnitOpenClosed(std::uint64_t bits);

}  // namespace inscom

#endif  // INSCOM_RANDOM_H_
