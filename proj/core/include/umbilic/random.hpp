#pragma once

#include <cstdint>

namespace umbilic {

/// SplitMix64 (Steele, Lea, Flood 2014). Deterministic across platforms;
/// `split(k)` derives an independent stream from the seed and a stream index.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  SplitMix64 split(std::uint64_t stream) const {
    SplitMix64 g(state_ ^ (stream * 0xd1b54a32d192ed03ULL));
    g.next();
    return SplitMix64(g.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace umbilic
