#pragma once

#include <cstdint>

namespace rank2 {

// Counter-based generator built on the splitmix64 finalizer. Every output is
// a pure function of (seed, counter, stream), so draws are reproducible
// across platforms and independent of evaluation order.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t counter,
                        std::uint64_t stream = 0) {
  return splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc909ULL) +
                    splitmix64(counter) + stream * 0x9e3779b97f4a7c15ULL);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform_at(std::uint64_t seed, std::uint64_t counter,
                         std::uint64_t stream = 0) {
  return uniform01(at(seed, counter, stream));
}

// Small stateful convenience wrapper for test fixtures.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix64(state_++); }
  double uniform() { return uniform01(next()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace rng
}  // namespace rank2
