#pragma once

#include <cstdint>

namespace bslab {

// Deterministic cross-platform generator. std:: distributions are
// implementation-defined, so all sampling goes through this.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // uniform in [0, n)
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

  // Independent substream for sample index i; keeps results independent of
  // any thread layout because the stream is tied to the sample, not the worker.
  static Rng substream(uint64_t seed, uint64_t index) {
    Rng mix(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  uint64_t state_;
};

}  // namespace bslab
