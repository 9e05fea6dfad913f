#pragma once

#include <cstdint>

namespace phwo {

// Counter-based generator: every draw is a pure hash of (seed, ctr0, ctr1, ctr2),
// so replicas are reproducible regardless of execution order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2) const {
    std::uint64_t h = mix(seed_ ^ 0x2545f4914f6cdd1dULL);
    h = mix(h ^ mix(c0));
    h = mix(h ^ mix(c1 + 0x6a09e667f3bcc909ULL));
    h = mix(h ^ mix(c2 + 0xbb67ae8584caa73bULL));
    return h;
  }

  // uniform in [0, 1)
  double uniform(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2) const {
    return (bits(c0, c1, c2) >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, m)
  std::uint64_t below(std::uint64_t m, std::uint64_t c0, std::uint64_t c1,
                      std::uint64_t c2) const {
    return static_cast<std::uint64_t>(uniform(c0, c1, c2) * static_cast<double>(m));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace phwo
